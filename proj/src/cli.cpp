#include "orbithull/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "orbithull/io.hpp"
#include "orbithull/random.hpp"

namespace orbithull::cli {

namespace {

struct Config {
  std::string command;
  double tol = 1e-7;
  std::uint64_t seed = 0;
  bool exact = false;
  int degree = 2;
  std::optional<int> k;
  int n = 4;
  int part = 1;
  std::optional<int> q;
  std::optional<double> eps;
  std::optional<double> eps1;
  std::optional<double> eps2;
  std::optional<double> eta;
  std::string e_sizes;
  std::string out;
  std::map<std::string, std::string> files;
};

struct Result {
  int exit = kAffirmative;
  Json body = Json::object();
};

const std::string* file(const Config& c, const std::string& key) {
  const auto it = c.files.find(key);
  return it == c.files.end() || it->second.empty() ? nullptr : &it->second;
}

CMatrix read_matrix(const std::string& path) { return matrix_from_json(load_json(path), path); }

// Matrix from --<key> or, when absent, from the generator.
CMatrix matrix_or(const Config& c, const std::string& key, const std::function<CMatrix()>& gen) {
  if (const auto* p = file(c, key)) return read_matrix(*p);
  return gen();
}

bool has_inputs(const Config& c, std::initializer_list<const char*> keys) {
  bool any = false, all = true;
  for (const char* k : keys) {
    const bool present = file(c, k) != nullptr;
    any = any || present;
    all = all && present;
  }
  if (any && !all) {
    std::string names;
    for (const char* k : keys) names += std::string(names.empty() ? "" : ", ") + "--" + k;
    throw InputError("arguments", "give all of " + names + " or none (random instance)");
  }
  return all;
}

Json spectrum_json(const SpectralForm& f) {
  return Json{{"values", to_json(f.values)}, {"multiplicities", f.multiplicities}};
}

Result cmd_check_normal(const Config& c) {
  Rng rng = make_rng(c.seed);
  const CMatrix x = matrix_or(c, "x", [&] { return random_normal(rng, random_tuple(rng, c.n)); });
  require_square(x, "check-normal");
  const double tol = c.eps.value_or(default_normality_tolerance(x));
  const NormalityReport rep = check_normality(x, tol);
  Result r;
  r.body["x"] = to_json(x);
  r.body["defect"] = rep.defect;
  r.body["tolerance"] = rep.tolerance;
  r.body["verdict"] = rep.pass ? "normal" : "not_normal";
  if (rep.pass) r.body["spectrum"] = spectrum_json(spectral_decompose(NormalMatrix(x, tol)));
  r.exit = rep.pass ? kAffirmative : kNegative;
  return r;
}

// Random pair with x in the hull of the orbit of y.
std::pair<CMatrix, CMatrix> random_member_pair(const Config& c) {
  Rng rng = make_rng(c.seed);
  const CVector mu = random_tuple(rng, c.n);
  const CMatrix y = random_normal(rng, mu);
  const DoublyStochastic d = random_doubly_stochastic(rng, c.n, 3);
  const CMatrix x = random_normal(rng, d.matrix().cast<Complex>() * mu);
  return {x, y};
}

std::pair<CMatrix, CMatrix> pair_inputs(const Config& c) {
  if (has_inputs(c, {"x", "y"})) return {read_matrix(*file(c, "x")), read_matrix(*file(c, "y"))};
  return random_member_pair(c);
}

Result cmd_member(const Config& c) {
  const auto [x, y] = pair_inputs(c);
  const MembershipResult m = membership(NormalMatrix(x), NormalMatrix(y), c.tol, c.exact);
  Result r;
  r.body["x"] = to_json(x);
  r.body["y"] = to_json(y);
  r.body["verdict"] = m.verdict();
  r.body["result"] = to_json(m);
  r.exit = m.member ? kAffirmative : kNegative;
  return r;
}

Result cmd_mutual(const Config& c) {
  CMatrix x, y;
  if (has_inputs(c, {"x", "y"})) {
    x = read_matrix(*file(c, "x"));
    y = read_matrix(*file(c, "y"));
  } else {
    Rng rng = make_rng(c.seed);
    y = random_normal(rng, random_tuple(rng, c.n));
    const CMatrix u = random_unitary(rng, c.n);
    x = u.adjoint() * y * u;
  }
  const MutualReport m = mutual_membership(NormalMatrix(x), NormalMatrix(y), c.tol);
  Result r;
  const bool both = m.xy.member && m.yx.member;
  r.body["x"] = to_json(x);
  r.body["y"] = to_json(y);
  r.body["verdict"] = both ? "mutual" : "not_mutual";
  r.body["xy"] = to_json(m.xy);
  r.body["yx"] = to_json(m.yx);
  r.body["spectra_equal"] = m.spectra_equal;
  r.body["measures_equal"] = m.measures_equal;
  r.body["equivalence_holds"] = m.equivalence_holds;
  r.exit = both ? kAffirmative : kNegative;
  return r;
}

Result cmd_distance(const Config& c) {
  const auto [x, y] = pair_inputs(c);
  const DistanceBound d = distance_bound(NormalMatrix(x), NormalMatrix(y));
  Result r;
  r.body["x"] = to_json(x);
  r.body["y"] = to_json(y);
  r.body["lower"] = d.lower;
  r.body["upper"] = d.upper;
  r.body["modulus_upper"] = d.modulus_upper;
  r.body["d"] = to_json(d.d.matrix());
  r.body["separator"] = to_json(d.separator);
  const bool within = d.upper <= c.tol;
  r.body["verdict"] = within ? "within_tol" : "beyond_tol";
  r.exit = within ? kAffirmative : kNegative;
  return r;
}

Result cmd_birkhoff(const Config& c) {
  RMatrix d;
  if (const auto* p = file(c, "d")) {
    d = real_matrix_from_json(load_json(*p), *p);
  } else {
    Rng rng = make_rng(c.seed);
    d = random_doubly_stochastic(rng, c.n, c.n).matrix();
  }
  const DoublyStochastic ds(d);
  const PermutationCombination combo = decompose(ds, c.eps.value_or(1e-12));
  const double err = max_abs(RMatrix(evaluate(combo, ds.size()).matrix() - d));
  Result r;
  r.body["d"] = to_json(d);
  r.body["decomposition"] = to_json(combo);
  r.body["terms"] = combo.size();
  r.body["term_bound"] = birkhoff_term_bound(ds.size());
  r.body["reconstruction_error"] = err;
  r.body["verdict"] = "decomposed";
  return r;
}

Result cmd_correct(const Config& c) {
  Result r;
  if (has_inputs(c, {"x", "y", "channel"})) {
    const CMatrix x = read_matrix(*file(c, "x"));
    const CMatrix y = read_matrix(*file(c, "y"));
    const std::string& cp = *file(c, "channel");
    const MixedUnitaryChannel ch = channel_from_json(load_json(cp), cp);
    CorrectionOptions opt;
    opt.eps1 = c.eps1;
    opt.eps2 = c.eps2;
    const CorrectionReport rep = corrected_channel(NormalMatrix(x), NormalMatrix(y), ch.action(), opt);
    r.body["x"] = to_json(x);
    r.body["y"] = to_json(y);
    r.body["report"] = to_json(rep);
    r.body["verdict"] = "corrected";
    return r;
  }
  RMatrix d;
  if (const auto* p = file(c, "d")) {
    d = real_matrix_from_json(load_json(*p), *p);
  } else {
    // Doubly stochastic matrix with mass shifted between two rows inside
    // each column: column sums stay 1, row sums move by +-h.
    Rng rng = make_rng(c.seed);
    d = random_doubly_stochastic(rng, c.n, c.n).matrix();
    const int i1 = uniform_int(rng, 0, c.n - 1);
    const int i2 = (i1 + 1 + uniform_int(rng, 0, c.n - 2)) % c.n;
    const double h = uniform(rng, 0.0, c.eps2.value_or(0.05));
    const RVector moved = h * d.row(i2).transpose();
    d.row(i1) += moved.transpose();
    d.row(i2) -= moved.transpose();
  }
  const RVector defects = d.rowwise().sum().array() - 1.0;
  const double eps2 = c.eps2.value_or(defects.cwiseAbs().maxCoeff());
  const CorrectionReport rep = correct_ds(d, eps2);
  r.body["eps2"] = eps2;
  r.body["report"] = to_json(rep);
  r.body["verdict"] = "corrected";
  return r;
}

NormalMatrix random_block(Rng& rng, int n) { return NormalMatrix(random_normal(rng, random_tuple(rng, n))); }

std::vector<int> parse_sizes(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw InputError("--e-sizes", "expected comma-separated integers");
    }
  }
  return out;
}

Result witness_result(const AveragingWitness& w) {
  Result r;
  r.body["witness"] = to_json(w);
  const bool ok = w.within_bound();
  r.body["verdict"] = ok ? "within_bound" : "bound_violated";
  r.exit = ok ? kAffirmative : kNegative;
  return r;
}

Result cmd_lemma35(const Config& c) {
  Rng rng = make_rng(c.seed);
  const int k = c.k.value_or(4);
  Result r;
  switch (c.part) {
    case 1: {
      const auto* p = file(c, "a");
      const NormalMatrix a = p ? NormalMatrix(read_matrix(*p)) : random_block(rng, 2);
      r = witness_result(cyclic_shift_witness(a, k));
      break;
    }
    case 2: {
      std::optional<NormalMatrix> ys, yb;
      if (has_inputs(c, {"y-small", "y-big"})) {
        ys.emplace(read_matrix(*file(c, "y-small")));
        yb.emplace(read_matrix(*file(c, "y-big")));
      } else {
        ys.emplace(random_block(rng, 1));
        yb.emplace(random_block(rng, 2));
      }
      r = witness_result(absorb_witness(*ys, *yb, k, c.q));
      break;
    }
    case 3: {
      std::optional<SpectralForm> x;
      std::vector<int> sizes;
      std::optional<NormalMatrix> ys;
      if (has_inputs(c, {"x", "y-small"})) {
        x = spectral_decompose(NormalMatrix(read_matrix(*file(c, "x"))));
        ys.emplace(read_matrix(*file(c, "y-small")));
        sizes = c.e_sizes.empty() ? std::vector<int>(x->multiplicities.size(), 0) : parse_sizes(c.e_sizes);
        if (c.e_sizes.empty()) {
          if (ys->dim() != 1) throw InputError("--e-sizes", "required unless y-small is 1x1");
          sizes[0] = 1;
        }
      } else {
        const CVector lam = random_tuple(rng, 2);
        sizes = {1, 1};
        CVector expanded(2 * (k + 2));
        for (int i = 0; i < 2 * (k + 2); ++i) expanded(i) = lam(i < k + 2 ? 0 : 1);
        x = spectral_decompose(NormalMatrix(random_normal(rng, expanded)));
        ys.emplace(random_block(rng, 2));
      }
      r = witness_result(corner_replace_witness(*x, sizes, *ys, k));
      break;
    }
    default:
      throw ParameterError("lemma35: --part must be 1, 2 or 3");
  }
  r.body["part"] = c.part;
  return r;
}

Result cmd_lemma44(const Config& c) {
  Rng rng = make_rng(c.seed);
  const int k = c.k.value_or(2);
  std::optional<SpectralForm> x1;
  std::optional<NormalMatrix> x2;
  if (has_inputs(c, {"x1", "x2"})) {
    x1 = spectral_decompose(NormalMatrix(read_matrix(*file(c, "x1"))));
    x2.emplace(read_matrix(*file(c, "x2")));
  } else {
    const int m = 2 * k + 5;
    const CVector lam = random_tuple(rng, 2);
    CVector expanded(2 * m);
    for (int i = 0; i < 2 * m; ++i) expanded(i) = lam(i < m ? 0 : 1);
    x1 = spectral_decompose(NormalMatrix(random_normal(rng, expanded)));
    x2.emplace(random_block(rng, 1));
  }
  return witness_result(absorb_estimate(*x1, *x2, k, c.eta, c.eps.value_or(0.0)));
}

Result cmd_transport(const Config& c) {
  RVector a, b;
  if (has_inputs(c, {"a", "b"})) {
    const std::string& pa = *file(c, "a");
    const std::string& pb = *file(c, "b");
    a = real_tuple_from_json(load_json(pa), pa);
    b = real_tuple_from_json(load_json(pb), pb);
  } else {
    Rng rng = make_rng(c.seed);
    a = random_simplex(rng, c.n);
    b = random_simplex(rng, c.n + 1);
  }
  const TransportPlan plan = riesz_interpolate(a, b);
  Result r;
  r.body["plan"] = to_json(plan);
  r.body["verdict"] = "feasible";
  return r;
}

Result cmd_measures(const Config& c) {
  std::optional<DiscreteMeasure> mx, my;
  if (has_inputs(c, {"mx", "my"})) {
    const std::string& px = *file(c, "mx");
    const std::string& py = *file(c, "my");
    mx.emplace(measure_from_json(load_json(px), px));
    my.emplace(measure_from_json(load_json(py), py));
  } else {
    // Y as averages of X under a random kernel, weights pushed back: feasible.
    Rng rng = make_rng(c.seed);
    const CVector xs = random_tuple(rng, c.n);
    const int k = std::max(1, c.n - 1);
    RMatrix s(k, c.n);
    for (int y = 0; y < k; ++y) s.row(y) = random_simplex(rng, c.n).transpose();
    const RVector wy = random_simplex(rng, k);
    const RVector wx = s.transpose() * wy;
    const CVector ys = s.cast<Complex>() * xs;
    mx.emplace(std::vector<Complex>(xs.begin(), xs.end()), std::vector<double>(wx.begin(), wx.end()));
    my.emplace(std::vector<Complex>(ys.begin(), ys.end()), std::vector<double>(wy.begin(), wy.end()));
  }
  const double eps = c.eps.value_or(c.tol);
  const TransferReport r4 = check_condition4(*mx, *my, eps, c.degree);
  const TransferReport r5 = check_condition5(*mx, *my, eps, c.degree);
  Result r;
  r.body["mx"] = to_json(*mx);
  r.body["my"] = to_json(*my);
  r.body["condition4"] = to_json(r4);
  r.body["condition5"] = to_json(r5);
  r.body["agree"] = r4.feasible == r5.feasible;
  const bool ok = r4.feasible && r5.feasible;
  r.body["verdict"] = r4.feasible != r5.feasible ? "disagree" : (ok ? "feasible" : "infeasible");
  r.exit = ok ? kAffirmative : kNegative;
  return r;
}

// Re-checks a stored report by direct arithmetic.
Result cmd_verify(const Config& c) {
  const std::string* p = file(c, "report");
  if (!p) throw InputError("--report", "required");
  const Json rep = load_json(*p);
  const std::string at = *p;
  const auto get = [&](const Json& j, const char* key, const std::string& where) -> const Json& {
    if (!j.is_object() || !j.contains(key)) throw InputError(where + "/" + key, "missing field");
    return j[key];
  };
  const std::string command = get(rep, "command", at + "#").get<std::string>();
  Result r;
  r.body["checked"] = command;
  bool pass = false;
  double error = 0.0, allowed = 0.0;
  if (command == "member") {
    const CMatrix x = matrix_from_json(get(rep, "x", at + "#"), at + "#/x");
    const CMatrix y = matrix_from_json(get(rep, "y", at + "#"), at + "#/y");
    const Json& res = get(rep, "result", at + "#");
    if (res.contains("witness")) {
      const MixedUnitaryChannel ch = channel_from_json(res["witness"], at + "#/result/witness");
      error = witness_error(ch, x, y);
      allowed = res.at("tol").get<double>();
      pass = error <= allowed;
      r.body["kind"] = "witness";
    } else {
      const CVector sep = tuple_from_json(get(res, "separator", at + "#/result"), at + "#/result/separator");
      const CVector lam = tuple_from_json(get(res, "lambda", at + "#/result"), at + "#/result/lambda");
      const CVector mu = tuple_from_json(get(res, "mu", at + "#/result"), at + "#/result/mu");
      error = separation_gap(sep, ComplexTuple(lam), ComplexTuple(mu));
      pass = error > 0.0;
      r.body["kind"] = "separator";
    }
  } else if (command == "lemma35" || command == "lemma44") {
    const Json& w = get(rep, "witness", at + "#");
    const CMatrix src = matrix_from_json(get(w, "source", at + "#/witness"), at + "#/witness/source");
    const CMatrix tgt = matrix_from_json(get(w, "target", at + "#/witness"), at + "#/witness/target");
    CMatrix out = src;
    const Json& stages = get(w, "stages", at + "#/witness");
    for (std::size_t i = 0; i < stages.size(); ++i) {
      out = channel_from_json(stages[i], at + "#/witness/stages/" + std::to_string(i))(out);
    }
    error = operator_norm(CMatrix(tgt - out));
    allowed = w.at("bound").get<double>() + 1e-9;
    pass = error <= allowed;
    r.body["kind"] = "averaging";
  } else if (command == "correct") {
    const Json& body = get(rep, "report", at + "#");
    const RMatrix dc = real_matrix_from_json(get(body, "d_corrected", at + "#/report"), at + "#/report/d_corrected");
    error = DoublyStochastic::sum_defect(dc);
    allowed = 1e-10;
    pass = error <= allowed && dc.minCoeff() >= -1e-12;
    if (pass && body.contains("channel")) {
      const CMatrix x = matrix_from_json(get(rep, "x", at + "#"), at + "#/x");
      const CMatrix y = matrix_from_json(get(rep, "y", at + "#"), at + "#/y");
      const MixedUnitaryChannel ch = channel_from_json(body["channel"], at + "#/report/channel");
      error = witness_error(ch, x, y);
      allowed = body.at("bound").get<double>() + 1e-8;
      pass = error <= allowed;
    }
    r.body["kind"] = "correction";
  } else if (command == "birkhoff") {
    const RMatrix d = real_matrix_from_json(get(rep, "d", at + "#"), at + "#/d");
    const Json& terms = get(get(rep, "decomposition", at + "#"), "terms", at + "#/decomposition");
    RMatrix sum = RMatrix::Zero(d.rows(), d.cols());
    std::vector<PermutationTerm> pts;
    for (const auto& t : terms) pts.push_back({t.at("weight").get<double>(), t.at("perm").get<Permutation>()});
    const PermutationCombination combo(pts);
    error = max_abs(RMatrix(evaluate(combo, d.rows()).matrix() - d));
    allowed = 1e-10;
    pass = error <= allowed;
    r.body["kind"] = "birkhoff";
  } else {
    throw InputError(at + "#/command", "no verifier for command '" + command + "'");
  }
  r.body["error"] = error;
  r.body["allowed"] = allowed;
  r.body["verdict"] = pass ? "verified" : "rejected";
  r.exit = pass ? kAffirmative : kNegative;
  return r;
}

const std::map<std::string, std::function<Result(const Config&)>>& commands() {
  static const std::map<std::string, std::function<Result(const Config&)>> table{
      {"check-normal", cmd_check_normal}, {"member", cmd_member},     {"mutual", cmd_mutual},
      {"distance", cmd_distance},         {"birkhoff", cmd_birkhoff}, {"correct", cmd_correct},
      {"lemma35", cmd_lemma35},           {"lemma44", cmd_lemma44},   {"transport", cmd_transport},
      {"measures", cmd_measures},         {"verify", cmd_verify}};
  return table;
}

const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const InputError*>(&e)) return "input";
  if (dynamic_cast<const ShapeError*>(&e)) return "shape";
  if (dynamic_cast<const ParameterError*>(&e)) return "parameter";
  if (dynamic_cast<const PreconditionError*>(&e)) return "precondition";
  if (dynamic_cast<const DomainError*>(&e)) return "domain";
  if (dynamic_cast<const SizeError*>(&e)) return "size";
  if (dynamic_cast<const BalanceError*>(&e)) return "balance";
  if (dynamic_cast<const DegeneracyError*>(&e)) return "degeneracy";
  if (dynamic_cast<const InvariantError*>(&e)) return "invariant";
  return "internal";
}

}  // namespace

Outcome run(const std::vector<std::string>& args) {
  Config cfg;
  CLI::App app{"Convex hulls of unitary orbits of normal matrices", "orbithull"};
  app.require_subcommand(1);
  static const std::vector<std::string> file_keys{"x", "y", "d", "a", "b", "mx", "my", "channel",
                                                  "y-small", "y-big", "x1", "x2", "report"};
  for (const auto& [name, fn] : commands()) {
    (void)fn;
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--tol", cfg.tol, "membership tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "seed for generated instances");
    sub->add_flag("--exact", cfg.exact, "solve LPs over rationals");
    sub->add_option("--degree", cfg.degree, "test monomial degree");
    sub->add_option("--K", cfg.k, "averaging parameter K");
    sub->add_option("--n", cfg.n, "size of generated instances")->check(CLI::Range(1, 64));
    sub->add_option("--part", cfg.part, "lemma35 part (1, 2 or 3)");
    sub->add_option("--q", cfg.q, "size of the absorbing block");
    sub->add_option("--eps", cfg.eps, "slack or budget");
    sub->add_option("--eps1", cfg.eps1, "correction eps1");
    sub->add_option("--eps2", cfg.eps2, "correction eps2");
    sub->add_option("--eta", cfg.eta, "density of the eigenvalue set");
    sub->add_option("--e-sizes", cfg.e_sizes, "corner sizes, comma separated");
    sub->add_option("--out", cfg.out, "report path");
    for (const auto& key : file_keys) sub->add_option("--" + key, cfg.files[key], key + " JSON file");
  }

  Outcome outcome;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    outcome.exit = kAffirmative;
    outcome.diagnostic = app.help();
    return outcome;
  } catch (const CLI::ParseError& e) {
    outcome.exit = kError;
    outcome.diagnostic = e.what();
    outcome.report = Json{{"schema", kSchema}, {"command", nullptr},
                          {"error", {{"kind", "usage"}, {"message", e.what()}}}}.dump(2) + "\n";
    return outcome;
  }
  for (const auto& [name, fn] : commands()) {
    if (app.got_subcommand(name)) cfg.command = name;
  }
  outcome.out_path = cfg.out;

  Json report{{"schema", kSchema}, {"command", cfg.command}};
  try {
    Result r = commands().at(cfg.command)(cfg);
    report.update(r.body);
    report["exit"] = r.exit;
    outcome.exit = r.exit;
  } catch (const std::exception& e) {
    Json err{{"kind", error_kind(e)}, {"message", e.what()}};
    if (const auto* ie = dynamic_cast<const InputError*>(&e)) err["where"] = ie->where();
    report["error"] = std::move(err);
    report["exit"] = static_cast<int>(kError);
    outcome.exit = kError;
    outcome.diagnostic = e.what();
  }
  outcome.report = report.dump(2) + "\n";
  if (!outcome.out_path.empty()) {
    std::ofstream out(outcome.out_path);
    if (!out) {
      outcome.exit = kError;
      outcome.diagnostic = "cannot write " + outcome.out_path;
    } else {
      out << outcome.report;
    }
  }
  return outcome;
}

}  // namespace orbithull::cli
