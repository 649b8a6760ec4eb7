#include "bousfield/cli/run.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bousfield/classalg/classes.hpp"
#include "bousfield/classalg/expr.hpp"
#include "bousfield/cli/config.hpp"
#include "bousfield/errors.hpp"
#include "bousfield/homoracle/cache.hpp"
#include "bousfield/homoracle/checks.hpp"
#include "bousfield/setalg/expr.hpp"

namespace bousfield::cli {

namespace {

using json = nlohmann::ordered_json;
using namespace classalg;
using homoracle::BigradedVS;
using homoracle::ElementaryModule;
using homoracle::Report;
using homoracle::RingConfig;

struct Outcome {
  explicit Outcome(std::string cmd) : command(std::move(cmd)) {}

  std::string command;
  json inputs = json::object();
  json verdict;
  std::string verdict_text;  // human form, defaults to verdict.dump()
  json witness;              // null when absent
  std::vector<std::string> witness_lines;
  std::vector<std::string> certificates;
  int status = kOk;
};

struct Context {
  Config config;
  unsigned m = 2;
  std::vector<std::string> args;
  std::map<std::string, std::string> extra;  // leaf-specific options
  setalg::PrimeUniverse universe() const { return config.universe(); }
};

const char* side_name(Side s) { return s == Side::Left ? "left" : "right"; }

// Re-checks before anything is printed: a witness that does not verify is a
// verification failure, never output.
void add_witness(Outcome& o, const Witness& w, const SumClass& left, const SumClass& right,
                 const std::string& label = {}) {
  if (!verify(w, left, right))
    throw VerificationError("witness " + to_expression(w.object) + " does not re-verify");
  json j = {{"object", to_expression(w.object)}, {"kills", side_name(w.kills)}, {"survives", side_name(w.survives)}};
  if (!label.empty()) j["for"] = label;
  if (o.witness.is_null()) o.witness = json::array();
  o.witness.push_back(j);
  o.witness_lines.push_back((label.empty() ? "" : label + ": ") + to_expression(w.object) + " kills " +
                            side_name(w.kills) + ", survives " + side_name(w.survives));
}

std::string finiteness(const NSet& s) { return s.is_finite() ? "finite" : "infinite"; }

std::string set_list(const std::vector<unsigned>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "}";
}

// "X * Y" at top level, when the expression is a single product of two
// factors; used only to report the killing sets behind a zero verdict.
std::optional<std::pair<std::string, std::string>> split_product(const std::string& text) {
  int depth = 0;
  std::optional<std::size_t> star;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (depth == 0 && text.compare(i, 3, "(+)") == 0) return std::nullopt;
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '*' && depth == 0) star = i;
  }
  if (!star) return std::nullopt;
  return std::pair{text.substr(0, *star), text.substr(*star + 1)};
}

void killing_certificates(Outcome& o, const SumClass& x, const SumClass& y) {
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) {
      NSet k = tensor_cells(x.summands()[i], y.summands()[j]).killing;
      o.certificates.push_back("summands (" + std::to_string(i) + "," + std::to_string(j) +
                               "): K = (C&T)|(C&U)|(B&U) = " + setalg::to_expression(k) + " is " + finiteness(k));
    }
}

std::vector<unsigned> subset_of(unsigned mask) {
  std::vector<unsigned> out;
  for (unsigned i = 0; mask >> i; ++i)
    if (mask >> i & 1) out.push_back(i + 1);
  return out;
}

std::vector<ElementaryModule> all_modules(const RingConfig& r) {
  std::vector<ElementaryModule> out{ElementaryModule::trivial(r)};
  for (std::size_t p = 0; p < r.size(); ++p) {
    std::vector<ElementaryModule> next;
    for (const auto& m : out)
      for (unsigned e = 1; e <= r.var(p).exponent; ++e) {
        auto c = m;
        c.exponents[p] = e;
        next.push_back(c);
      }
    out = std::move(next);
  }
  return out;
}

void add_report(Outcome& o, const Report& rep, const std::string& label) {
  std::string line = rep.check + " " + label + ": " + (rep.passed ? "pass" : "FAIL " + rep.failure);
  if (!rep.passed && rep.bidegree)
    line += " at (s=" + std::to_string(rep.bidegree->first) + ", d=" + std::to_string(rep.bidegree->second) + ")";
  o.certificates.push_back(line);
  if (!rep.passed) o.status = kVerificationFailed;
}

json table(const BigradedVS& v) {
  json rows = json::array();
  for (const auto& [k, dim] : v.entries()) rows.push_back({{"s", k.first}, {"d", k.second}, {"dim", dim}});
  return rows;
}

std::string table_text(const BigradedVS& v) {
  std::ostringstream os;
  os << "s\td\tdim";
  for (const auto& [k, dim] : v.entries()) os << "\n" << k.first << "\t" << k.second << "\t" << dim;
  return os.str();
}

void require_args(const Context& c, std::size_t n, const std::string& usage) {
  if (c.args.size() != n) throw ParseError("expected " + usage);
}

// ---------------------------------------------------------------------------
// set

Outcome set_eval(Context& c) {
  require_args(c, 1, "EXPR");
  Outcome o{"set eval"};
  o.inputs["expr"] = c.args[0];
  NSet s = setalg::evaluate_set(c.args[0], c.universe());
  o.verdict = setalg::to_expression(s);
  o.verdict_text = o.verdict.get<std::string>();
  o.certificates.push_back(finiteness(s));
  if (auto n = s.cardinality()) o.certificates.push_back("cardinality " + std::to_string(*n));
  return o;
}

Outcome set_cmp(Context& c) {
  require_args(c, 2, "EXPR EXPR");
  Outcome o{"set cmp"};
  o.inputs["left"] = c.args[0];
  o.inputs["right"] = c.args[1];
  NSet a = setalg::evaluate_set(c.args[0], c.universe()), b = setalg::evaluate_set(c.args[1], c.universe());
  bool ab = setalg::lesssim(a, b), ba = setalg::lesssim(b, a);
  std::string v = a == b ? "equal" : ab && ba ? "commensurable" : ab ? "less" : ba ? "greater" : "incomparable";
  o.verdict = v;
  o.verdict_text = v;
  o.certificates.push_back("left \\ right = " + setalg::to_expression(a - b) + " is " + finiteness(a - b));
  o.certificates.push_back("right \\ left = " + setalg::to_expression(b - a) + " is " + finiteness(b - a));
  return o;
}

Outcome set_enum(Context& c) {
  require_args(c, 1, "EXPR");
  Outcome o{"set enum"};
  o.inputs["expr"] = c.args[0];
  NSet s = setalg::evaluate_set(c.args[0], c.universe());
  std::ostringstream text;
  if (c.extra.count("count")) {
    std::size_t n = std::stoul(c.extra["count"]);
    o.inputs["count"] = n;
    o.verdict = json::array();
    for (const auto& t : setalg::enumerate_members(s, n)) {
      std::string term = t.exponent == 1 ? std::to_string(t.base) : std::to_string(t.base) + "^" + std::to_string(t.exponent);
      o.verdict.push_back(term);
      text << (text.tellp() ? " " : "") << term;
    }
  } else {
    setalg::Nat bound = c.extra.count("bound") ? std::stoull(c.extra["bound"]) : 100;
    o.inputs["bound"] = bound;
    o.verdict = setalg::enumerate_upto(s, bound);
    for (auto n : o.verdict) text << (text.tellp() ? " " : "") << n.get<setalg::Nat>();
  }
  o.verdict_text = text.str();
  return o;
}

// ---------------------------------------------------------------------------
// class

Outcome class_iszero(Context& c) {
  require_args(c, 1, "CLASS");
  Outcome o{"class iszero"};
  o.inputs["expr"] = c.args[0];
  SumClass x = parse_class(c.args[0], c.universe());
  o.verdict = x.is_zero() ? "zero" : "nonzero";
  o.verdict_text = o.verdict.get<std::string>();
  if (auto parts = split_product(c.args[0]))
    killing_certificates(o, parse_class(parts->first, c.universe()), parse_class(parts->second, c.universe()));
  if (!x.is_zero()) o.certificates.push_back("value " + to_expression(x));
  return o;
}

Outcome class_tensor(Context& c) {
  require_args(c, 2, "CLASS CLASS");
  Outcome o{"class tensor"};
  o.inputs["left"] = c.args[0];
  o.inputs["right"] = c.args[1];
  SumClass x = parse_class(c.args[0], c.universe()), y = parse_class(c.args[1], c.universe());
  SumClass t = tensor(x, y);
  o.verdict = to_expression(t);
  o.verdict_text = o.verdict.get<std::string>();
  killing_certificates(o, x, y);
  return o;
}

Outcome class_cmp(Context& c) {
  require_args(c, 2, "GENERATOR GENERATOR");
  Outcome o{"class cmp"};
  o.inputs["left"] = c.args[0];
  o.inputs["right"] = c.args[1];
  GenClass x = parse_generator(c.args[0], c.universe()), y = parse_generator(c.args[1], c.universe());
  bool xy = leq(x, y), yx = leq(y, x);
  std::string v = xy && yx ? "equal" : xy ? "less" : yx ? "greater" : "incomparable";
  o.verdict = v;
  o.verdict_text = v;
  auto facts = [&](const GenClass& p, const GenClass& q, const std::string& name) {
    o.certificates.push_back(name + ": A \\ A' = " + setalg::to_expression(p.a() - q.a()) + " is " +
                             finiteness(p.a() - q.a()) + ", C' \\ C = " + setalg::to_expression(q.c() - p.c()) + " is " +
                             finiteness(q.c() - p.c()));
  };
  facts(x, y, "left <= right");
  facts(y, x, "right <= left");
  if (!xy) {
    auto w = separating_witness(x, y);
    if (!w) throw VerificationError("no witness although left is not below right");
    add_witness(o, *w, x, y, "left not below right");
  }
  if (!yx) {
    auto w = separating_witness(y, x);
    if (!w) throw VerificationError("no witness although right is not below left");
    // Reported with left/right as given on the command line.
    Witness flipped{w->object, w->kills == Side::Left ? Side::Right : Side::Left,
                    w->survives == Side::Left ? Side::Right : Side::Left, w->survivor};
    add_witness(o, flipped, x, y, "right not below left");
  }
  return o;
}

Outcome class_join_cmp(Context& c) {
  require_args(c, 2, "CLASS CLASS");
  Outcome o{"class join-cmp"};
  o.inputs["left"] = c.args[0];
  o.inputs["right"] = c.args[1];
  SumClass x = parse_class(c.args[0], c.universe()), y = parse_class(c.args[1], c.universe());
  JoinComparison r = join_leq(x, y);
  o.verdict = r.verdict == Verdict::True ? "true" : r.verdict == Verdict::False ? "false" : "unknown";
  o.verdict_text = o.verdict.get<std::string>();
  if (r.witness) add_witness(o, *r.witness, x, y);
  if (!r.caveat.empty()) o.certificates.push_back(r.caveat);
  return o;
}

Outcome class_witness(Context& c) {
  require_args(c, 2, "CLASS CLASS");
  Outcome o{"class witness"};
  o.inputs["left"] = c.args[0];
  o.inputs["right"] = c.args[1];
  SumClass x = parse_class(c.args[0], c.universe()), y = parse_class(c.args[1], c.universe());
  auto w = separating_witness(x, y);
  o.verdict = w ? "separated" : "not-separated";
  o.verdict_text = o.verdict.get<std::string>();
  if (w) add_witness(o, *w, x, y);
  return o;
}

Outcome class_height(Context& c) {
  require_args(c, 1, "CLASS");
  Outcome o{"class height"};
  o.inputs["expr"] = c.args[0];
  SumClass x = parse_class(c.args[0], c.universe());
  auto h = nilpotence_height(x);
  if (h) {
    o.verdict = *h;
    o.verdict_text = std::to_string(*h);
    SumClass next = tensor_power(x, *h + 1);
    o.certificates.push_back("power " + std::to_string(*h + 1) + " = " + to_expression(next));
  } else {
    o.verdict = "infinite";
    o.verdict_text = "infinite";
    o.certificates.push_back("powers revisit a nonzero class pattern");
  }
  return o;
}

Outcome class_antichain(Context& c) {
  require_args(c, 1, "N");
  Outcome o{"class antichain"};
  std::size_t n = std::stoul(c.args[0]);
  o.inputs["n"] = n;
  auto primes = c.universe().primes();
  Antichain a = antichain(n, primes);
  o.verdict = json::array();
  for (const auto& s : a.sets) o.verdict.push_back(setalg::to_expression(s));
  o.verdict_text = std::to_string(a.sets.size()) + " pairwise incomparable classes";
  for (std::size_t i = 0; i < a.sets.size(); ++i)
    o.certificates.push_back("member " + std::to_string(i) + ": M(" + setalg::to_expression(a.sets[i]) + ")");
  for (const auto& cert : a.certificates) {
    std::string label = std::to_string(cert.i) + "," + std::to_string(cert.j);
    add_witness(o, cert.i_not_below_j, a.classes[cert.i], a.classes[cert.j], label + " i not below j");
    add_witness(o, cert.j_not_below_i, a.classes[cert.j], a.classes[cert.i], label + " j not below i");
  }
  if (c.extra.count("extend")) {
    std::size_t k = std::stoul(c.extra["extend"]);
    if (k > a.sets.size()) throw PreconditionError("cannot extend more members than listed");
    std::vector<NSet> family(a.sets.begin(), a.sets.begin() + long(k));
    NSet t = antichain_extend(family, primes);
    o.inputs["extend"] = k;
    o.certificates.push_back("extension of the first " + std::to_string(k) + ": M(" + setalg::to_expression(t) + ")");
    GenClass gt = GenClass::M(t);
    for (std::size_t i = 0; i < k; ++i) {
      auto cert = certify_incomparable(a.classes[i], gt);
      if (!cert) {
        o.certificates.push_back("extension is comparable with member " + std::to_string(i));
        o.status = kVerificationFailed;
        continue;
      }
      add_witness(o, cert->i_not_below_j, a.classes[i], gt, "ext," + std::to_string(i) + " member not below extension");
      add_witness(o, cert->j_not_below_i, gt, a.classes[i], "ext," + std::to_string(i) + " extension not below member");
    }
  }
  return o;
}

Outcome class_interval(Context& c) {
  require_args(c, 3, "SET SET N");
  Outcome o{"class interval"};
  o.inputs["lower"] = c.args[0];
  o.inputs["upper"] = c.args[1];
  std::size_t n = std::stoul(c.args[2]);
  o.inputs["n"] = n;
  NSet t = setalg::evaluate_set(c.args[0], c.universe()), u = setalg::evaluate_set(c.args[1], c.universe());
  IntervalAntichain a = interval_antichain(t, u, n, c.universe().primes());
  o.verdict = json::array();
  for (const auto& g : a.classes) o.verdict.push_back(to_expression(g));
  o.verdict_text = std::to_string(a.classes.size()) + " pairwise incomparable classes strictly between M(lower) and M(upper)";
  for (const auto& g : a.classes) o.certificates.push_back(to_expression(g));
  for (const auto& cert : a.certificates) {
    std::string label = std::to_string(cert.i) + "," + std::to_string(cert.j);
    add_witness(o, cert.i_not_below_j, a.classes[cert.i], a.classes[cert.j], label + " i not below j");
    add_witness(o, cert.j_not_below_i, a.classes[cert.j], a.classes[cert.i], label + " j not below i");
  }
  return o;
}

Outcome class_minimal(Context& c) {
  require_args(c, 1, "GENERATOR");
  Outcome o{"class minimal-check"};
  o.inputs["expr"] = c.args[0];
  GenClass x = parse_generator(c.args[0], c.universe());
  MinimalityReport r = minimal_check(x);
  o.verdict = r.equals_minimum ? "minimum" : r.above_minimum ? "above-minimum" : "not-above-minimum";
  o.verdict_text = o.verdict.get<std::string>();
  o.certificates.push_back(std::string("<I(N)> <= X: ") + (r.above_minimum ? "yes" : "no"));
  o.certificates.push_back(std::string("X <= <I(N)>: ") + (r.below_minimum ? "yes" : "no"));
  if (!r.above_minimum) o.status = kVerificationFailed;
  return o;
}

Outcome class_distinguish(Context& c) {
  require_args(c, 2, "SUM SUM");
  Outcome o{"class distinguish"};
  o.inputs["left"] = c.args[0];
  o.inputs["right"] = c.args[1];
  SumClass x = parse_class(c.args[0], c.universe()), y = parse_class(c.args[1], c.universe());
  auto w = distinguish_sums(x.summands(), y.summands());
  o.verdict = w ? "distinct" : "same";
  o.verdict_text = o.verdict.get<std::string>();
  if (w) add_witness(o, *w, x, y);
  return o;
}

Outcome class_descending(Context& c) {
  require_args(c, 1, "M");
  Outcome o{"class descending-chain"};
  std::size_t m = std::stoul(c.args[0]);
  std::size_t count = c.extra.count("primes") ? std::stoul(c.extra["primes"]) : std::max<std::size_t>(m, 5);
  auto primes = setalg::first_primes(count);
  for (auto p : primes)
    if (!c.universe().contains(p)) throw PreconditionError("prime " + std::to_string(p) + " exceeds pmax");
  o.inputs["m"] = m;
  o.inputs["primes"] = count;
  bool ok = true;
  for (std::size_t k = 1; k <= m; ++k) {
    DescendingChainStep step = descending_chain_class(k, primes);
    ok &= step.kills_power && step.survives_previous;
    Witness w{step.witness, Side::Left, Side::Right, 0};
    add_witness(o, w, step.power, step.previous, "step " + std::to_string(k));
    o.certificates.push_back("step " + std::to_string(k) + ": U = " + setalg::to_expression(step.tail));
  }
  o.verdict = ok ? "strictly-descending" : "not-descending";
  o.verdict_text = o.verdict.get<std::string>();
  if (!ok) o.status = kVerificationFailed;
  return o;
}

// ---------------------------------------------------------------------------
// oracle

void window_inputs(Outcome& o, const Context& c, const RingConfig& r) {
  auto w = c.config.window();
  o.inputs["ring"] = r.digest();
  o.inputs["smax"] = w.s_max;
  o.inputs["dmin"] = w.d_min;
  o.inputs["dmax"] = w.d_max;
}

Outcome oracle_tor_ext(Context& c, bool is_tor) {
  require_args(c, 2, "MODULE MODULE");
  Outcome o{is_tor ? "oracle tor" : "oracle ext"};
  RingConfig r = c.config.ring(c.m);
  window_inputs(o, c, r);
  o.inputs["left"] = c.args[0];
  o.inputs["right"] = c.args[1];
  auto x = parse_module(c.args[0], r), y = parse_module(c.args[1], r);
  BigradedVS v = is_tor ? homoracle::tor(x, y, r, c.config.window()) : homoracle::ext(x, y, r, c.config.window());
  o.verdict = table(v);
  o.verdict_text = table_text(v);
  return o;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  std::uint64_t b = 1;
  for (unsigned i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

Outcome oracle_poincare(Context& c) {
  require_args(c, 0, "no arguments");
  Outcome o{"oracle poincare"};
  RingConfig r = c.config.ring(c.m);
  int s_max = c.config.s_max;
  o.inputs["ring"] = r.digest();
  o.inputs["smax"] = s_max;
  long reach = 0;
  for (const auto& v : r.vars()) reach = std::max(reach, long(v.exponent) * v.degree);
  // Whole internal range: tor_s(k, k) lives in degrees <= s * max n_i deg x_i.
  auto t = homoracle::tor(ElementaryModule::trivial(r), ElementaryModule::trivial(r), r,
                          homoracle::Window{s_max, 0, reach * (s_max + 1)});
  o.verdict = json::array();
  std::string text;
  for (int s = 0; s <= s_max; ++s) {
    auto dim = t.total(s);
    o.verdict.push_back(dim);
    text += (s ? "," : "") + std::to_string(dim);
    auto expected = binomial(unsigned(s) + c.m - 1, c.m - 1);
    if (dim != expected) {
      o.status = kVerificationFailed;
      o.certificates.push_back("s=" + std::to_string(s) + ": " + std::to_string(dim) + " != C(s+m-1, m-1) = " +
                               std::to_string(expected));
    }
  }
  if (o.status == kOk) o.certificates.push_back("matches C(s+m-1, m-1) for s <= " + std::to_string(s_max));
  o.verdict_text = text;
  return o;
}

Outcome oracle_verify(Context& c, const std::string& suite) {
  Outcome o{"oracle verify " + suite};
  RingConfig r = c.config.ring(c.m);
  auto w = c.config.window();
  window_inputs(o, c, r);
  const unsigned m = c.m;
  if (suite == "shapiro") {
    require_args(c, 0, "no arguments");
    for (const auto& x : all_modules(r))
      for (unsigned mask = 0; mask < (1u << m); ++mask)
        add_report(o, homoracle::check_shapiro(x, subset_of(mask), r, w), x.text() + " S=" + set_list(subset_of(mask)));
  } else if (suite == "triangles") {
    require_args(c, 0, "no arguments");
    for (const auto& v : r.vars())
      for (unsigned j = 2; j <= v.exponent; ++j)
        add_report(o, homoracle::check_triangle(v.index, j, r, w),
                   "i=" + std::to_string(v.index) + " j=" + std::to_string(j));
  } else if (suite == "duality") {
    require_args(c, 0, "no arguments");
    auto mods = all_modules(r);
    for (const auto& x : mods)
      for (const auto& y : mods) add_report(o, homoracle::check_duality(x, y, r, w), x.text() + " " + y.text());
  } else if (suite == "socle") {
    require_args(c, 0, "no arguments");
    for (unsigned v = 0; v < (1u << m); ++v)
      for (unsigned sub = v;; sub = (sub - 1) & v) {
        add_report(o, homoracle::socle_degree_check(subset_of(v), subset_of(sub), r),
                   "V=" + set_list(subset_of(v)) + " W=" + set_list(subset_of(sub)));
        if (sub == 0) break;
      }
  } else if (suite == "predicate") {
    require_args(c, 2, "SET SET");
    o.inputs["T"] = c.args[0];
    o.inputs["U"] = c.args[1];
    NSet t = setalg::evaluate_set(c.args[0], c.universe()), u = setalg::evaluate_set(c.args[1], c.universe());
    auto rep = homoracle::predicate_consistency(t, u, r, w);
    o.certificates.push_back(std::string("M(T) (x) I(U) is ") + (rep.predicate_zero ? "zero" : "nonzero") +
                             ": T^c & U is " + (rep.predicate_zero ? "infinite" : "finite"));
    for (const auto& line : rep.report.lines) o.certificates.push_back(line);
    add_report(o, rep.report, "trend");
  } else {
    throw ParseError("unknown suite '" + suite + "' (shapiro, triangles, duality, socle, predicate)");
  }
  o.verdict = o.status == kOk ? "pass" : "fail";
  o.verdict_text = o.verdict.get<std::string>();
  return o;
}

// ---------------------------------------------------------------------------

void emit(std::ostream& out, const Outcome& o, bool as_json, std::optional<double> seconds) {
  if (as_json) {
    json j;
    j["command"] = o.command;
    j["inputs"] = o.inputs;
    j["verdict"] = o.verdict;
    if (!o.witness.is_null()) j["witness"] = o.witness;
    j["certificates"] = o.certificates;
    j["timing"] = seconds ? json({{"seconds", *seconds}}) : json(nullptr);
    out << j.dump(2) << "\n";
    return;
  }
  out << (o.verdict_text.empty() ? o.verdict.dump() : o.verdict_text) << "\n";
  for (const auto& l : o.witness_lines) out << "witness " << l << "\n";
  for (const auto& l : o.certificates) out << "  " << l << "\n";
  if (seconds) out << "time " << std::fixed << std::setprecision(3) << *seconds << " s\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bousfield lattice calculator and homological oracle", "bousfield"};
  app.fallthrough();
  app.require_subcommand(1);

  bool as_json = false, timing = false;
  std::optional<std::string> config_path, exponents, cache_dir;
  std::optional<unsigned> m, characteristic;
  std::optional<int> s_max;
  std::optional<long> d_max, d_min;
  std::optional<setalg::Nat> p_max;
  app.add_flag("--json", as_json, "Machine-readable output");
  app.add_flag("--timing", timing, "Report wall time");
  app.add_option("--config", config_path, "INI configuration file");
  app.add_option("--m", m, "Number of ring variables for oracle commands (default 2)");
  app.add_option("--n", exponents, "Exponents n_i: one value, or a list whose last entry repeats");
  app.add_option("--char", characteristic, "Field characteristic");
  app.add_option("--smax", s_max, "Homological cutoff");
  app.add_option("--dmax", d_max, "Internal-degree cutoff");
  app.add_option("--dmin", d_min, "Lower internal-degree cutoff (default -dmax)");
  app.add_option("--pmax", p_max, "Prime universe bound");
  app.add_option("--cache-dir", cache_dir, "Resolution cache directory");

  Context ctx;
  std::vector<std::pair<CLI::App*, std::function<Outcome(Context&)>>> leaves;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc,
                  std::function<Outcome(Context&)> fn) {
    CLI::App* sub = parent->add_subcommand(name, desc);
    sub->add_option("args", ctx.args, "Arguments");
    leaves.emplace_back(sub, std::move(fn));
    return sub;
  };
  auto extra = [&](CLI::App* sub, const std::string& name, const std::string& desc) {
    sub->add_option_function<std::string>("--" + name, [&ctx, name](const std::string& v) { ctx.extra[name] = v; },
                                          desc);
  };

  CLI::App* set = app.add_subcommand("set", "Set algebra");
  set->require_subcommand(1);
  leaf(set, "eval", "Canonical form of a set expression", set_eval);
  leaf(set, "cmp", "Commensurability relation between two sets", set_cmp);
  auto* en = leaf(set, "enum", "List members", set_enum);
  extra(en, "bound", "List members up to this bound (default 100)");
  extra(en, "count", "List this many members, as prime powers where sparse");

  CLI::App* cls = app.add_subcommand("class", "Bousfield class algebra");
  cls->require_subcommand(1);
  leaf(cls, "iszero", "Decide whether a class expression is zero", class_iszero);
  leaf(cls, "tensor", "Tensor product of two classes", class_tensor);
  leaf(cls, "cmp", "Compare two generator classes", class_cmp);
  leaf(cls, "join-cmp", "Compare two sums of generators", class_join_cmp);
  leaf(cls, "witness", "Object separating left from right", class_witness);
  leaf(cls, "height", "Nilpotence height", class_height);
  auto* ac = leaf(cls, "antichain", "Certified antichain of M(S_q)", class_antichain);
  extra(ac, "extend", "Also extend the first K members by a diagonal set");
  leaf(cls, "interval", "Antichain strictly between M(T) and M(U)", class_interval);
  leaf(cls, "minimal-check", "Compare with the minimum class <I(N)>", class_minimal);
  leaf(cls, "distinguish", "Separate two sub-sums of an incomparable family", class_distinguish);
  auto* dc = leaf(cls, "descending-chain", "Strict descent of tensor powers up to M", class_descending);
  extra(dc, "primes", "Number of tracked primes (default max(M, 5))");

  CLI::App* oracle = app.add_subcommand("oracle", "Homological oracle");
  oracle->require_subcommand(1);
  leaf(oracle, "tor", "Tor of two elementary modules", [](Context& c) { return oracle_tor_ext(c, true); });
  leaf(oracle, "ext", "Ext of two elementary modules", [](Context& c) { return oracle_tor_ext(c, false); });
  leaf(oracle, "poincare", "dim tor_s(k, k) for s <= smax", oracle_poincare);
  CLI::App* verify_cmd = oracle->add_subcommand("verify", "Run a verification suite");
  verify_cmd->require_subcommand(1);
  for (const char* suite : {"shapiro", "triangles", "duality", "socle", "predicate"})
    leaf(verify_cmd, suite, std::string("Verification suite: ") + suite,
         [suite = std::string(suite)](Context& c) { return oracle_verify(c, suite); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    Config& cfg = ctx.config;
    if (config_path) load_config_file(cfg, *config_path);
    apply_environment(cfg);
    if (exponents) set_exponents(cfg, *exponents);
    if (characteristic) cfg.characteristic = *characteristic;
    if (s_max) cfg.s_max = *s_max;
    if (d_max) cfg.d_max = *d_max;
    if (d_min) cfg.d_min = *d_min;
    if (p_max) cfg.p_max = *p_max;
    if (cache_dir) cfg.cache_dir = *cache_dir;
    cfg.validate();
    ctx.m = m.value_or(2);
    if (ctx.m > 40) throw PreconditionError("--m must be at most 40");
    homoracle::ResolutionCache::global().set_directory(
        cfg.cache_dir ? std::optional<std::filesystem::path>(*cfg.cache_dir) : std::nullopt);

    for (auto& [sub, fn] : leaves) {
      if (!sub->parsed()) continue;
      auto start = std::chrono::steady_clock::now();
      Outcome o = fn(ctx);
      std::optional<double> seconds;
      if (timing) seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      emit(out, o, as_json, seconds);
      return o.status;
    }
    throw ParseError("no command given");
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const RangeError& e) {
    err << "out of range: " << e.what() << "\n";
    return kPrecondition;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const std::invalid_argument& e) {
    err << "parse error: bad number (" << e.what() << ")\n";
    return kParseError;
  } catch (const std::out_of_range& e) {
    err << "parse error: number out of range (" << e.what() << ")\n";
    return kParseError;
  }
}

}  // namespace bousfield::cli
