#include "toricdegen/degeneration.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace toricdegen {

// ---------------------------------------------------------------------------
// Lattice sequences

LatticeSequence build_sequences(std::size_t n) {
  if (n == 0) throw MathError("rank must be positive");
  LatticeSequence s;
  s.i.assign(n + 1, IntVector(n, Integer(0)));
  for (std::size_t k = 0; k < n; ++k) s.i[k][k] = 1;
  s.mu.assign(1, IntVector(n + 1, Integer(0)));
  s.mu[0][n] = 1;
  s.j.assign(n + 1, IntVector(1, Integer(0)));
  s.j[n][0] = 1;
  s.nu.assign(n, IntVector(n + 1, Integer(0)));
  for (std::size_t k = 0; k < n; ++k) s.nu[k][k] = 1;
  if (!s.is_exact()) throw MathError("lattice sequence is not exact");
  return s;
}

bool LatticeSequence::is_exact() const {
  auto zero = [](const IntMatrix& m) {
    return std::all_of(m.begin(), m.end(), [](const IntVector& r) { return is_zero(r); });
  };
  auto same_lattice = [](const IntMatrix& image_columns, const IntMatrix& a, std::size_t columns) {
    return hermite_normal_form(transpose(image_columns)).basis == integer_kernel(a, columns);
  };
  const std::size_t n = i.empty() ? 0 : i[0].size();
  return zero(multiply(mu, i)) && zero(multiply(nu, j)) && maximal_minors_gcd(mu) == 1 &&
         maximal_minors_gcd(nu) == 1 && toricdegen::rank(transpose(i)) == n &&
         toricdegen::rank(transpose(j)) == 1 && same_lattice(i, mu, n + 1) && same_lattice(j, nu, n + 1);
}

// ---------------------------------------------------------------------------
// Charts

namespace {

IntVector last_unit(std::size_t n) { return unit_int_vector(n, n - 1); }

}  // namespace

std::vector<LocalChart> local_charts(const LiftedPolytope& l, std::vector<std::string>* warnings) {
  const Partition& g = *l.base;
  const auto& p = l.polytope;
  const std::size_t dim = p.ambient_rank();
  std::vector<LocalChart> out;
  for (std::size_t k = 0; k < g.faces().size(); ++k) {
    const auto& face = g.faces()[k];
    if (face.dim != 0) continue;
    LocalChart chart;
    chart.vertex = face.vertices[0];
    chart.lifted = p.face_vertices(l.lift_map[k]).at(0);
    chart.face_dim = face.delta_face_dim;
    chart.delta_vertex = face.is_delta_vertex;
    auto v = p.vertex_index(chart.lifted);
    if (!v || !is_nonsingular_vertex(p, *v)) {
      if (warnings) warnings->push_back("no chart at the singular vertex " + to_string(chart.lifted));
      continue;
    }
    chart.edges = p.edge_directions(*v);
    auto c = solve_unique(to_rational(transpose(chart.edges)), to_rational(last_unit(dim)));
    auto ci = c ? to_integer(*c) : std::nullopt;
    if (!ci) throw MathError("chart exponents are not integral at " + to_string(chart.lifted));
    chart.exponents = *ci;
    for (std::size_t e = 0; e < chart.exponents.size(); ++e)
      if (chart.exponents[e] != 0) chart.monomial.push_back(e);

    if (face.is_delta_vertex) {
      chart.edge_sum_holds =
          std::find(chart.edges.begin(), chart.edges.end(), last_unit(dim)) != chart.edges.end();
    } else {
      IntVector sum = zero_int_vector(dim);
      for (auto e : g.edges_at(k, face.delta_face)) {
        IntVector d = g.edge_direction(e, chart.vertex);
        sum = add(sum, lift_direction(l.function, g.faces()[e].pieces[0], d));
      }
      chart.edge_sum_holds = sum == last_unit(dim);
    }
    out.push_back(std::move(chart));
  }
  return out;
}

bool charts_consistent(const LiftedPolytope& l, const std::vector<LocalChart>& charts) {
  const auto& p = l.polytope;
  for (std::size_t a = 0; a < charts.size(); ++a) {
    for (std::size_t b = 0; b < charts.size(); ++b) {
      if (a == b) continue;
      const auto& v = charts[a];
      const auto& w = charts[b];
      std::size_t edge = p.smallest_face_containing({v.lifted, w.lifted});
      if (p.faces()[edge].dim != 1) continue;
      const RatMatrix ev_inv = inverse(to_rational(transpose(v.edges)));
      const RatMatrix ew = to_rational(transpose(w.edges));
      IntMatrix change;  // columns of E_v^{-1} E_w, stored as rows
      for (const auto& column : transpose(ew)) {
        auto x = to_integer(multiply(ev_inv, column));
        if (!x) return false;
        change.push_back(*x);
      }
      const Integer det = determinant(change);
      if (det != 1 && det != -1) return false;
      if (multiply(transpose(change), w.exponents) != v.exponents) return false;
    }
  }
  return true;
}

FanChecks check_fans(const LiftedPolytope& l, const Fan& lifted_fan) {
  FanChecks out;
  const auto& delta = l.base->ambient();
  if (!delta.is_full_dimensional()) return out;
  const Fan base = normal_fan(delta);
  std::vector<std::size_t> embedded;
  out.subfan = true;
  for (const auto& cone : base.cones) {
    std::vector<std::size_t> rays;
    bool ok = true;
    for (auto r : cone) {
      IntVector lifted = base.rays[r];
      lifted.push_back(0);
      auto it = std::find(lifted_fan.rays.begin(), lifted_fan.rays.end(), lifted);
      if (it == lifted_fan.rays.end()) {
        ok = false;
        break;
      }
      rays.push_back(static_cast<std::size_t>(it - lifted_fan.rays.begin()));
    }
    std::sort(rays.begin(), rays.end());
    auto found = ok ? lifted_fan.find_cone(rays) : std::nullopt;
    if (!found) {
      out.subfan = false;
      continue;
    }
    embedded.push_back(*found);
  }
  out.upper = true;
  for (std::size_t c = 0; c < lifted_fan.cones.size(); ++c) {
    const auto& cone = lifted_fan.cones[c];
    bool positive = false, negative = false;
    for (auto r : cone) {
      const Integer& last = lifted_fan.rays[r].back();
      positive = positive || last > 0;
      negative = negative || last < 0;
    }
    if (negative) continue;
    bool is_base = std::find(embedded.begin(), embedded.end(), c) != embedded.end();
    if (!is_base && !positive) out.upper = false;
    if (is_base && positive) out.upper = false;
  }
  if (!l.cap && delta.is_compact()) {
    const auto& p = l.polytope;
    out.support = p.lineality().empty() && p.rays().size() == 1 && p.rays()[0] == last_unit(p.ambient_rank());
  }
  return out;
}

DegenerationReport build_report(const LiftedPolytope& l) {
  const Partition& g = *l.base;
  if (l.lift_map.size() != g.faces().size()) throw MathError("lifted polytope is not verified");
  const auto& c = g.classification();
  if (!c.semistable) throw PartitionError("partition is not semi-stable");
  if (!c.nonsingular && !c.mildly_singular)
    throw PartitionError("partition is neither nonsingular nor mildly singular");

  DegenerationReport r;
  r.lifted = l;
  if (l.polytope.is_full_dimensional()) r.fan = normal_fan(l.polytope);
  const auto classes = equivalence_classes(g.pieces());
  for (std::size_t j = 0; j < g.pieces().size(); ++j)
    r.components.push_back({j, g.pieces()[j], is_nonsingular(g.pieces()[j]), classes[j]});
  r.dual_graph = dual_complex(g);
  r.charts = local_charts(l, &r.warnings);
  r.weak = !c.nonsingular;
  for (auto v : c.singular_vertices) r.singular_vertices.push_back(g.faces()[v].vertices[0]);
  if (r.weak) r.warnings.push_back("weak semi-stable: the total space may be singular");
  if (l.polytope.is_full_dimensional()) r.fan_checks = check_fans(l, r.fan);
  return r;
}

// ---------------------------------------------------------------------------
// Family equations

namespace {

std::string monomial_string(const IntVector& m) {
  std::string out;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k] == 0) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(k + 1);
    if (m[k] != 1) out += "^" + to_string(m[k]);
  }
  return out;
}

}  // namespace

std::string FamilyEquations::polynomial() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (k) os << " + ";
    const std::string& c = coefficients[k];
    bool wrap = c.find_first_of("-/") != std::string::npos;
    os << (wrap ? "(" + c + ")" : c);
    if (exponents[k] != 0) os << "*lambda" << (exponents[k] == 1 ? "" : "^" + to_string(exponents[k]));
    std::string x = monomial_string(points[k]);
    if (!x.empty()) os << "*" << x;
  }
  return os.str();
}

FamilyEquations family_equations(const LiftedPolytope& l, std::optional<std::size_t> anchor,
                                 std::optional<std::uint64_t> seed) {
  const Partition& g = *l.base;
  if (!g.ambient().is_compact()) throw MathError("family equations require a compact polytope");
  FamilyEquations out;
  out.anchor = anchor.value_or(0);
  if (out.anchor >= g.pieces().size()) throw MathError("anchor piece out of range");

  const PiecewiseAffine normalized = l.function.shifted(l.function.per_piece[out.anchor]);
  out.normalized = normalized.per_piece;
  out.points = g.ambient().lattice_points();
  out.supports.assign(g.pieces().size(), {});
  for (std::size_t k = 0; k < out.points.size(); ++k) {
    const IntVector& m = out.points[k];
    Rational e = normalized(m);
    if (!is_integer(e)) throw MathError("exponent at " + to_string(m) + " is not integral");
    const bool in_anchor = g.pieces()[out.anchor].contains(m);
    if (e < 0 || (e == 0) != in_anchor)
      throw MathError("exponent " + to_string(e) + " at " + to_string(m) + " violates the normalization");
    out.exponents.push_back(Integer(e.get_num()));
    for (std::size_t j = 0; j < g.pieces().size(); ++j)
      if (g.pieces()[j].contains(m)) out.supports[j].push_back(k);
  }
  if (seed) {
    std::mt19937_64 rng(*seed);
    for (std::size_t k = 0; k < out.points.size(); ++k) {
      long num = 0;
      while (num == 0) num = static_cast<long>(rng() % 199) - 99;
      long den = static_cast<long>(rng() % 9) + 1;
      out.coefficients.push_back(to_string(make_rational(Integer(num), Integer(den))));
    }
  } else {
    for (std::size_t k = 0; k < out.points.size(); ++k) out.coefficients.push_back("a_" + std::to_string(k + 1));
  }
  return out;
}

}  // namespace toricdegen
