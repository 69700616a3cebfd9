#include "toricdegen/cli.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace toricdegen::cli {

using Json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Reading

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
  throw InputError(message, path.empty() ? "/" : path);
}

const Json& member(const Json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) schema_error(path, std::string("missing field '") + key + "'");
  return *it;
}

const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array");
  return j;
}

Integer read_integer(const Json& j, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const bool ok = !s.empty() && std::all_of(s.begin() + (s[0] == '-' ? 1 : 0), s.end(),
                                              [](char c) { return c >= '0' && c <= '9'; }) &&
                    s != "-";
    if (ok) return Integer(s);
  }
  schema_error(path, "expected an integer");
}

Rational read_rational(const Json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception&) {
      schema_error(path, "expected a rational number");
    }
  }
  return Rational(read_integer(j, path));
}

IntVector read_vector(const Json& j, const std::string& path) {
  IntVector v;
  const Json& a = as_array(j, path);
  for (std::size_t k = 0; k < a.size(); ++k) v.push_back(read_integer(a[k], path + "/" + std::to_string(k)));
  return v;
}

std::vector<IntVector> read_vectors(const Json& j, const std::string& path, std::optional<std::size_t>& rank) {
  std::vector<IntVector> out;
  const Json& a = as_array(j, path);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const std::string p = path + "/" + std::to_string(k);
    out.push_back(read_vector(a[k], p));
    if (out.back().empty()) schema_error(p, "empty vector");
    if (rank && out.back().size() != *rank) schema_error(p, "expected " + std::to_string(*rank) + " coordinates");
    rank = out.back().size();
  }
  return out;
}

std::size_t read_count(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    schema_error(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

/// {vertices[, rays]} or a bare vertex list.
LatticePolytope read_generators(const Json& j, const std::string& path, std::optional<std::size_t>& rank) {
  if (j.is_array()) {
    auto pts = read_vectors(j, path, rank);
    if (pts.empty()) schema_error(path, "a polytope needs at least one vertex");
    return LatticePolytope::from_vertices(pts);
  }
  if (!j.is_object()) schema_error(path, "expected a vertex list or an object");
  auto pts = read_vectors(member(j, path, "vertices"), path + "/vertices", rank);
  std::vector<IntVector> rays;
  if (j.contains("rays")) rays = read_vectors(j["rays"], path + "/rays", rank);
  if (pts.empty()) schema_error(path + "/vertices", "a polyhedron needs at least one vertex");
  std::vector<RatVector> rp;
  for (const auto& p : pts) rp.push_back(to_rational(p));
  return LatticePolytope::from_generators(*rank, rp, rays);
}

LatticePolytope read_polytope(const Json& j, const std::string& path, std::optional<std::size_t>& rank) {
  if (!j.is_object()) schema_error(path, "expected an object");
  const bool has_v = j.contains("vertices"), has_h = j.contains("halfspaces");
  if (has_v == has_h) schema_error(path, "give exactly one of 'vertices' and 'halfspaces'");
  if (has_v) return read_generators(j, path, rank);

  if (j.contains("rank")) rank = read_count(j["rank"], path + "/rank");
  const std::string hp = path + "/halfspaces";
  const Json& hs = as_array(j["halfspaces"], hp);
  std::vector<std::pair<IntVector, Rational>> raw;
  for (std::size_t k = 0; k < hs.size(); ++k) {
    const std::string p = hp + "/" + std::to_string(k);
    if (!hs[k].is_object()) schema_error(p, "expected {normal, offset}");
    IntVector n = read_vector(member(hs[k], p, "normal"), p + "/normal");
    if (rank && n.size() != *rank) schema_error(p + "/normal", "expected " + std::to_string(*rank) + " coordinates");
    if (is_zero(n)) schema_error(p + "/normal", "zero normal");
    rank = n.size();
    raw.emplace_back(std::move(n), read_rational(member(hs[k], p, "offset"), p + "/offset"));
  }
  if (!rank || *rank == 0) schema_error(path, "the rank is unknown; add 'rank'");
  std::vector<Halfspace> ineq;
  for (const auto& [n, a] : raw) ineq.push_back(make_halfspace(to_rational(n), a));
  return LatticePolytope::from_halfspaces(*rank, ineq);
}

HyperplaneFamily read_hyperplanes(const Json& j, const std::string& path, std::size_t rank) {
  const Json* family = &j;
  std::string p = path;
  if (j.is_array()) {
    if (j.size() != 1) schema_error(path, "exactly one family of parallel hyperplanes is supported");
    family = &j[0];
    p += "/0";
  }
  if (!family->is_object()) schema_error(p, "expected {normal, offsets}");
  HyperplaneFamily h;
  h.normal = read_vector(member(*family, p, "normal"), p + "/normal");
  if (h.normal.size() != rank) schema_error(p + "/normal", "expected " + std::to_string(rank) + " coordinates");
  if (is_zero(h.normal)) schema_error(p + "/normal", "zero normal");
  const Json& offs = as_array(member(*family, p, "offsets"), p + "/offsets");
  for (std::size_t k = 0; k < offs.size(); ++k)
    h.offsets.push_back(read_integer(offs[k], p + "/offsets/" + std::to_string(k)));
  if (h.offsets.empty()) schema_error(p + "/offsets", "no offsets");
  return h;
}

void read_options(const Json& j, JobOptions& o) {
  const std::string path = "/options";
  if (!j.is_object()) schema_error(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string p = path + "/" + it.key();
    if (it.key() == "compact_cap" || it.key() == "multi_base") {
      if (!it->is_boolean()) schema_error(p, "expected a boolean");
      (it.key() == "compact_cap" ? o.compact_cap : o.multi_base) = it->get<bool>();
    } else if (it.key() == "anchor_piece") {
      o.anchor_piece = read_count(*it, p);
    } else if (it.key() == "coefficient_seed") {
      if (it->is_null()) continue;
      Integer s = read_integer(*it, p);
      if (s < 0 || !s.fits_ulong_p()) schema_error(p, "seed out of range");
      o.coefficient_seed = static_cast<std::uint64_t>(s.get_ui());
    } else {
      schema_error(p, "unknown option '" + it.key() + "'");
    }
  }
}

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

// ---------------------------------------------------------------------------
// Writing

Json jint(const Integer& x) {
  if (x.fits_slong_p()) return Json(static_cast<std::int64_t>(x.get_si()));
  return Json(to_string(x));
}

Json jrat(const Rational& x) {
  if (x.get_den() == 1) return jint(x.get_num());
  return Json(to_string(x));
}

Json jvec(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(jint(x));
  return a;
}

Json jvec(const RatVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(jrat(x));
  return a;
}

template <typename T>
Json jlist(const std::vector<T>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(jvec(v));
  return a;
}

Json jaffine(const AffineFunction& f) { return {{"linear", jvec(f.linear)}, {"constant", jrat(f.constant)}}; }

Json jpolytope(const LatticePolytope& p) {
  Json facets = Json::array();
  for (const auto& h : p.facets()) facets.push_back({{"normal", jvec(h.normal)}, {"offset", jrat(h.offset)}});
  Json out = {{"dimension", p.dimension()},
              {"compact", p.is_compact()},
              {"vertices", jlist(p.points())},
              {"rays", jlist(p.rays())},
              {"facets", facets}};
  if (!p.lineality().empty()) out["lineality"] = jlist(p.lineality());
  if (!p.equations().empty()) {
    Json eq = Json::array();
    for (const auto& h : p.equations()) eq.push_back({{"normal", jvec(h.normal)}, {"offset", jrat(h.offset)}});
    out["equations"] = eq;
  }
  return out;
}

std::string dump(const Json& j) { return j.dump(); }

const char* form_name(JobSpec::PartitionForm f) {
  switch (f) {
    case JobSpec::PartitionForm::Pieces:
      return "pieces";
    case JobSpec::PartitionForm::FanRays:
      return "fan_rays";
    case JobSpec::PartitionForm::Hyperplanes:
      return "hyperplanes";
  }
  return "";
}

std::string status_of(const Classification& c) {
  if (!c.semistable) return "not semi-stable";
  if (c.nonsingular) return "nonsingular";
  if (c.mildly_singular) return "mildly singular";
  return "semi-stable";
}

Json vertex_list(const Partition& g, const std::vector<std::size_t>& faces) {
  Json a = Json::array();
  for (auto f : faces) a.push_back(jvec(g.faces()[f].vertices[0]));
  return a;
}

/// Classification lines shared by every command; returns the classification.
const Classification& classification_lines(const JobSpec& job, const Partition& g, Outcome& out) {
  const auto& d = g.ambient();
  out.lines.push_back(dump({{"type", "input"},
                            {"ambient_rank", d.ambient_rank()},
                            {"dimension", d.dimension()},
                            {"compact", d.is_compact()},
                            {"partition_form", form_name(job.form)},
                            {"pieces", g.pieces().size()},
                            {"polytope", jpolytope(d)}}));
  Json pieces = Json::array();
  for (const auto& p : g.pieces()) pieces.push_back(jpolytope(p));
  out.lines.push_back(dump({{"type", "pieces"}, {"pieces", pieces}}));

  const auto& c = g.classification();
  Json cl = {{"type", "classification"}, {"status", status_of(c)}, {"semistable", c.semistable}};
  if (c.witness) {
    const auto& w = *c.witness;
    const auto& face = g.faces()[w.face];
    cl["witness"] = {{"face_vertices", jlist(face.vertices)},
                     {"face_rays", jlist(face.rays)},
                     {"face_dim", w.face_dim},
                     {"delta_face_dim", w.delta_face_dim},
                     {"pieces", w.count},
                     {"expected", w.expected}};
  } else {
    cl["balanced"] = c.balanced;
    cl["nonsingular"] = c.nonsingular;
    cl["mildly_singular"] = c.mildly_singular;
    cl["dual_dimension"] = c.dual_dimension;
    cl["maximal_vertices"] = vertex_list(g, c.maximal_vertices);
    cl["unbalanced_vertices"] = vertex_list(g, c.unbalanced_vertices);
    cl["singular_vertices"] = vertex_list(g, c.singular_vertices);
  }
  out.lines.push_back(dump(cl));
  if (!c.semistable) return c;

  Json ws = Json::array();
  for (const auto& w : c.weights) {
    Json weights = Json::array();
    for (const auto& x : w.weights) weights.push_back(jint(x));
    ws.push_back({{"vertex", jvec(w.vertex)}, {"edges", jlist(w.edges)}, {"weights", weights},
                  {"balanced", w.is_balanced()}});
  }
  out.lines.push_back(dump({{"type", "weights"}, {"vertices", ws}}));

  const DualComplex k = dual_complex(g);
  out.lines.push_back(dump({{"type", "dual_complex"},
                            {"vertex_count", k.vertex_count},
                            {"dimension", k.dimension()},
                            {"simplices", k.simplices}}));
  return c;
}

struct LiftStage {
  IntegralLifting lifting;
  LiftedPolytope lifted;
};

LiftStage lift_lines(const JobSpec& job, const Partition& g, Outcome& out) {
  const PiecewiseAffine f = lifting_function(g);
  LiftStage s{minimal_integral_lifting(f), {}};
  Json raw = Json::array(), scaled = Json::array();
  for (const auto& a : f.per_piece) raw.push_back(jaffine(a));
  for (const auto& a : s.lifting.function.per_piece) scaled.push_back(jaffine(a));
  Json conc = Json::array();
  const auto vertices = g.vertices();
  std::vector<Rational> multiset = s.lifting.concavity;
  std::sort(multiset.begin(), multiset.end());
  for (std::size_t k = 0; k < vertices.size(); ++k)
    conc.push_back({{"vertex", jvec(g.faces()[vertices[k]].vertices[0])}, {"value", jrat(s.lifting.concavity[k])}});
  Json ms = Json::array();
  for (const auto& x : multiset) ms.push_back(jrat(x));
  Json lf = {{"type", "lifting_function"},
             {"pieces", raw},
             {"scale", jrat(s.lifting.scale)},
             {"integral_pieces", scaled},
             {"concavity", conc},
             {"concavity_multiset", ms},
             {"unit_concavity", s.lifting.unit_concavity}};
  if (s.lifting.warning) lf["warning"] = *s.lifting.warning;
  out.lines.push_back(dump(lf));

  std::optional<CapRequest> cap;
  if (job.options.compact_cap) cap = CapRequest{};
  s.lifted = lift_polytope(g, s.lifting, cap);
  const auto& l = s.lifted;
  Json lp = {{"type", "lifted_polytope"}, {"polytope", jpolytope(l.polytope)}};
  lp["cap"] = l.cap ? Json{{"a", jvec(l.cap->a)}, {"b", jint(l.cap->b)}} : Json(nullptr);
  lp["unit_concavity"] = l.unit_concavity;
  lp["nonsingular"] = l.nonsingular;
  lp["singular_vertices"] = jlist(l.singular_vertices);
  lp["projection_ok"] = check_projection(l).ok;
  Json lifts = Json::array();
  for (std::size_t k = 0; k < g.faces().size(); ++k) {
    const auto& face = g.faces()[k];
    lifts.push_back({{"dim", face.dim},
                     {"vertices", jlist(face.vertices)},
                     {"lifted_vertices", jlist(l.polytope.face_vertices(l.lift_map[k]))}});
  }
  lp["face_lifts"] = lifts;
  out.lines.push_back(dump(lp));

  if (job.options.multi_base) {
    if (!job.hyperplanes) throw InputError("multi_base needs a hyperplane partition", "/options/multi_base");
    const auto it = iterated_lift(job.polytope, job.hyperplanes->normal, job.hyperplanes->offsets);
    Json comps = Json::array();
    for (const auto& piece : it.components) {
      Json fs = Json::array();
      for (const auto& a : piece) fs.push_back(jaffine(a));
      comps.push_back(fs);
    }
    out.lines.push_back(dump({{"type", "iterated_lift"},
                              {"steps", it.steps},
                              {"agree", it.agree},
                              {"components", comps},
                              {"one_shot", jpolytope(it.one_shot)},
                              {"iterative", jpolytope(it.iterative)}}));
  }
  return s;
}

std::string monomial_text(const LocalChart& c) {
  std::string s;
  for (auto k : c.monomial) {
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(k);
    if (c.exponents[k] != 1) s += "^" + to_string(c.exponents[k]);
  }
  return s;
}

void degeneration_lines(const JobSpec& job, const Partition& g, const LiftedPolytope& l, Outcome& out) {
  const DegenerationReport r = build_report(l);
  Json comps = Json::array();
  for (const auto& c : r.components)
    comps.push_back({{"piece", c.piece},
                     {"nonsingular", c.nonsingular},
                     {"equivalence_class", c.equivalence_class},
                     {"vertices", jlist(c.polytope.points())},
                     {"rays", jlist(c.polytope.rays())}});
  out.lines.push_back(dump({{"type", "components"}, {"components", comps}}));

  Json edges = Json::array();
  for (const auto& s : r.dual_graph.simplices_of_dimension(1)) edges.push_back(s);
  out.lines.push_back(dump({{"type", "dual_graph"},
                            {"nodes", r.dual_graph.vertex_count},
                            {"edges", edges},
                            {"simplices", r.dual_graph.simplices}}));

  Json charts = Json::array();
  for (const auto& c : r.charts)
    charts.push_back({{"vertex", jvec(c.vertex)},
                      {"lifted", jvec(c.lifted)},
                      {"face_dim", c.face_dim},
                      {"delta_vertex", c.delta_vertex},
                      {"edges", jlist(c.edges)},
                      {"exponents", jvec(c.exponents)},
                      {"factors", c.monomial.size()},
                      {"monomial", "t = " + monomial_text(c)},
                      {"edge_sum_holds", c.edge_sum_holds}});
  out.lines.push_back(dump({{"type", "charts"}, {"charts", charts}, {"consistent", charts_consistent(l, r.charts)}}));

  Json fc = {{"type", "fan_checks"}, {"subfan", r.fan_checks.subfan}, {"upper", r.fan_checks.upper}};
  fc["support"] = r.fan_checks.support ? Json(*r.fan_checks.support) : Json(nullptr);
  out.lines.push_back(dump(fc));

  out.lines.push_back(dump({{"type", "degeneration"},
                            {"weak", r.weak},
                            {"singular_vertices", jlist(r.singular_vertices)},
                            {"warnings", r.warnings}}));

  if (!g.ambient().is_compact()) {
    out.lines.push_back(dump({{"type", "family"}, {"skipped", "family equations require a compact polytope"}}));
    return;
  }
  const auto fe = family_equations(l, job.options.anchor_piece, job.options.coefficient_seed);
  Json normalized = Json::array();
  for (const auto& a : fe.normalized) normalized.push_back(jaffine(a));
  Json exps = Json::array();
  for (const auto& e : fe.exponents) exps.push_back(jint(e));
  out.lines.push_back(dump({{"type", "family"},
                            {"anchor", fe.anchor},
                            {"monomials", fe.points.size()},
                            {"points", jlist(fe.points)},
                            {"exponents", exps},
                            {"supports", fe.supports},
                            {"coefficients", fe.coefficients},
                            {"normalized", normalized},
                            {"polynomial", fe.polynomial()}}));
}

void diagrams(const Partition& g, Outcome& out) {
  out.dot = dual_graph_dot(g);
  if (g.ambient().ambient_rank() == 2 && g.ambient().is_full_dimensional()) out.svg = partition_svg(g);
}

}  // namespace

// ---------------------------------------------------------------------------

void Overrides::apply(JobOptions& options) const {
  if (compact_cap) options.compact_cap = true;
  if (multi_base) options.multi_base = true;
  if (anchor_piece) options.anchor_piece = anchor_piece;
  if (coefficient_seed) options.coefficient_seed = coefficient_seed;
}

Partition JobSpec::partition() const {
  switch (form) {
    case PartitionForm::Pieces:
      return Partition::build(polytope, pieces);
    case PartitionForm::FanRays:
      return partition_by_fan(polytope, *fan);
    case PartitionForm::Hyperplanes:
      return partition_by_hyperplanes(polytope, hyperplanes->normal, hyperplanes->offsets);
  }
  throw MathError("unknown partition form");
}

Fan fan_from_rays(std::size_t rank, const std::vector<IntVector>& rays) {
  std::vector<RatVector> pts;
  std::vector<IntVector> prim;
  for (const auto& r : rays) {
    if (is_zero(r)) throw MathError("zero ray");
    prim.push_back(primitive(r));
    pts.push_back(to_rational(prim.back()));
  }
  if (pts.empty()) throw MathError("a fan needs rays");
  const auto hull = LatticePolytope::from_generators(rank, pts);
  const RatVector origin = zero_rat_vector(rank);
  const bool interior = hull.is_full_dimensional() && std::all_of(hull.facets().begin(), hull.facets().end(),
                                                                    [&](const Halfspace& h) { return h.slack(origin) > 0; });
  if (!interior) throw MathError("the origin is not interior to the convex hull of the rays");
  std::vector<std::vector<std::size_t>> maximal;
  for (const auto& h : hull.facets()) {
    std::vector<std::size_t> cone;
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (h.slack(pts[k]) == 0) cone.push_back(k);
    maximal.push_back(cone);
  }
  return fan_from_maximal_cones(rank, prim, maximal);
}

JobSpec parse_job(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::string what = e.what();
    auto colon = what.rfind(": ");
    throw InputError("malformed JSON: " + (colon == std::string::npos ? what : what.substr(colon + 2)),
                     line_column(text, e.byte));
  }
  if (!j.is_object()) schema_error("", "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "polytope" && it.key() != "partition" && it.key() != "options")
      schema_error("/" + it.key(), "unknown field '" + it.key() + "'");

  std::optional<std::size_t> rank;
  JobSpec job{read_polytope(member(j, "", "polytope"), "/polytope", rank), JobSpec::PartitionForm::Pieces, {}, {}, {}, {}};
  const std::size_t n = job.polytope.ambient_rank();

  const Json& pj = member(j, "", "partition");
  if (!pj.is_object()) schema_error("/partition", "expected an object");
  const int forms = pj.contains("pieces") + pj.contains("fan_rays") + pj.contains("hyperplanes");
  if (forms != 1) schema_error("/partition", "give exactly one of 'pieces', 'fan_rays' and 'hyperplanes'");
  if (pj.contains("pieces")) {
    const Json& ps = as_array(pj["pieces"], "/partition/pieces");
    for (std::size_t k = 0; k < ps.size(); ++k) {
      std::optional<std::size_t> r = n;
      job.pieces.push_back(read_generators(ps[k], "/partition/pieces/" + std::to_string(k), r));
    }
    if (job.pieces.empty()) schema_error("/partition/pieces", "no pieces");
  } else if (pj.contains("fan_rays")) {
    job.form = JobSpec::PartitionForm::FanRays;
    std::optional<std::size_t> r = n;
    auto rays = read_vectors(pj["fan_rays"], "/partition/fan_rays", r);
    if (pj.contains("cones")) {
      std::vector<std::vector<std::size_t>> cones;
      const Json& cs = as_array(pj["cones"], "/partition/cones");
      for (std::size_t k = 0; k < cs.size(); ++k) {
        const std::string p = "/partition/cones/" + std::to_string(k);
        std::vector<std::size_t> cone;
        for (std::size_t q = 0; q < as_array(cs[k], p).size(); ++q) {
          cone.push_back(read_count(cs[k][q], p + "/" + std::to_string(q)));
          if (cone.back() >= rays.size()) schema_error(p + "/" + std::to_string(q), "ray index out of range");
        }
        std::sort(cone.begin(), cone.end());
        cones.push_back(cone);
      }
      std::vector<IntVector> prim;
      for (const auto& ray : rays) prim.push_back(primitive(ray));
      job.fan = fan_from_maximal_cones(n, prim, cones);
    } else {
      job.fan = fan_from_rays(n, rays);
    }
  } else {
    job.form = JobSpec::PartitionForm::Hyperplanes;
    job.hyperplanes = read_hyperplanes(pj["hyperplanes"], "/partition/hyperplanes", n);
  }
  for (auto it = pj.begin(); it != pj.end(); ++it)
    if (it.key() != "pieces" && it.key() != "fan_rays" && it.key() != "cones" && it.key() != "hyperplanes")
      schema_error("/partition/" + it.key(), "unknown field '" + it.key() + "'");
  if (j.contains("options")) read_options(j["options"], job.options);
  return job;
}

Outcome run_verify(const JobSpec& job) {
  Outcome out;
  const Partition g = job.partition();
  const auto& c = classification_lines(job, g, out);
  out.exit_code = c.semistable ? Ok : Rejected;
  if (c.semistable) diagrams(g, out);
  return out;
}

Outcome run_lift(const JobSpec& job) {
  Outcome out;
  const Partition g = job.partition();
  if (!classification_lines(job, g, out).semistable) {
    out.lines.push_back(error_line("math", "partition is not semi-stable"));
    out.exit_code = Rejected;
    return out;
  }
  lift_lines(job, g, out);
  diagrams(g, out);
  return out;
}

Outcome run_degenerate(const JobSpec& job) {
  Outcome out;
  const Partition g = job.partition();
  if (!classification_lines(job, g, out).semistable) {
    out.lines.push_back(error_line("math", "partition is not semi-stable"));
    out.exit_code = Rejected;
    return out;
  }
  const LiftStage s = lift_lines(job, g, out);
  degeneration_lines(job, g, s.lifted, out);
  diagrams(g, out);
  return out;
}

Outcome run(const std::string& command, const std::string& text, const Overrides& overrides) {
  Outcome partial;
  try {
    if (command != "verify" && command != "lift" && command != "degenerate")
      throw InputError("unknown command '" + command + "'", "command");
    JobSpec job = parse_job(text);
    overrides.apply(job.options);
    if (job.options.multi_base && !job.hyperplanes)
      throw InputError("multi_base needs a hyperplane partition", "/options/multi_base");
    if (command == "verify") return run_verify(job);
    if (command == "lift") return run_lift(job);
    return run_degenerate(job);
  } catch (const InputError& e) {
    partial.lines.push_back(error_line("input", e.what(), e.location()));
    partial.exit_code = BadInput;
  } catch (const PartitionError& e) {
    partial.lines.push_back(error_line("partition", e.what()));
    partial.exit_code = Rejected;
  } catch (const MathError& e) {
    partial.lines.push_back(error_line("math", e.what()));
    partial.exit_code = Rejected;
  }
  return partial;
}

std::string error_line(const std::string& kind, const std::string& message, const std::optional<std::string>& location) {
  Json e = {{"type", "error"}, {"kind", kind}, {"message", message}};
  if (location) e["location"] = *location;
  return dump(e);
}

// ---------------------------------------------------------------------------
// Diagrams

std::string dual_graph_dot(const Partition& g) {
  std::ostringstream os;
  os << "graph dual_complex {\n  node [shape=circle];\n";
  for (std::size_t j = 0; j < g.pieces().size(); ++j) os << "  p" << j << " [label=\"" << j << "\"];\n";
  for (auto w : g.walls()) {
    const auto& face = g.faces()[w];
    os << "  p" << face.pieces[0] << " -- p" << face.pieces[1] << " [label=\"";
    for (std::size_t k = 0; k < face.vertices.size(); ++k) os << (k ? " " : "") << to_string(face.vertices[k]);
    os << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

namespace {

LatticePolytope clip(const LatticePolytope& p, const Integer& radius) {
  std::vector<Halfspace> box;
  for (std::size_t i = 0; i < p.ambient_rank(); ++i) {
    box.push_back({unit_int_vector(p.ambient_rank(), i), Rational(radius)});
    box.push_back({negate(unit_int_vector(p.ambient_rank(), i)), Rational(radius)});
  }
  return p.intersect(LatticePolytope::from_halfspaces(p.ambient_rank(), box));
}

std::vector<std::pair<double, double>> polygon(const LatticePolytope& p) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& v : p.points()) pts.emplace_back(v[0].get_d(), v[1].get_d());
  double cx = 0, cy = 0;
  for (const auto& [x, y] : pts) {
    cx += x;
    cy += y;
  }
  cx /= static_cast<double>(pts.size());
  cy /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
    return std::atan2(a.second - cy, a.first - cx) < std::atan2(b.second - cy, b.first - cx);
  });
  return pts;
}

const char* kPalette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
                          "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};

}  // namespace

std::string partition_svg(const Partition& g) {
  if (g.ambient().ambient_rank() != 2) throw MathError("SVG output needs a 2-dimensional polytope");
  const bool clipped = !g.ambient().is_compact();
  Integer radius = 2;
  for (const auto& p : g.pieces())
    for (const auto& v : p.points())
      for (const auto& x : v) radius = std::max<Integer>(radius, Integer(abs(ceil_of(x))) + 2);

  std::vector<std::vector<std::pair<double, double>>> polys;
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  for (const auto& p : g.pieces()) {
    polys.push_back(polygon(clipped ? clip(p, radius) : p));
    for (const auto& [x, y] : polys.back()) {
      lo_x = std::min(lo_x, x), hi_x = std::max(hi_x, x);
      lo_y = std::min(lo_y, y), hi_y = std::max(hi_y, y);
    }
  }
  const double unit = 60, margin = 20;
  auto sx = [&](double x) { return margin + (x - lo_x) * unit; };
  auto sy = [&](double y) { return margin + (hi_y - y) * unit; };
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * margin + (hi_x - lo_x) * unit << "\" height=\""
     << 2 * margin + (hi_y - lo_y) * unit << "\">\n";
  for (std::size_t j = 0; j < polys.size(); ++j) {
    os << "  <polygon id=\"piece" << j << "\" fill=\"" << kPalette[j % std::size(kPalette)]
       << "\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < polys[j].size(); ++k)
      os << (k ? " " : "") << sx(polys[j][k].first) << "," << sy(polys[j][k].second);
    os << "\"/>\n";
  }
  for (auto v : g.vertices()) {
    const auto& p = g.faces()[v].vertices[0];
    os << "  <circle cx=\"" << sx(p[0].get_d()) << "\" cy=\"" << sy(p[1].get_d()) << "\" r=\"3\"/>\n";
  }
  for (std::size_t j = 0; j < polys.size(); ++j) {
    double cx = 0, cy = 0;
    for (const auto& [x, y] : polys[j]) {
      cx += x;
      cy += y;
    }
    cx /= static_cast<double>(polys[j].size());
    cy /= static_cast<double>(polys[j].size());
    os << "  <text x=\"" << sx(cx) << "\" y=\"" << sy(cy) << "\" text-anchor=\"middle\">" << j << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace toricdegen::cli
