#include "orbithull/io.hpp"

#include <fstream>
#include <sstream>

namespace orbithull {

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw InputError(path + "@" + std::to_string(e.byte), "malformed JSON");
  }
}

namespace {

std::string child(const std::string& at, const std::string& key) {
  return at + (at.find('#') == std::string::npos ? "#" : "") + "/" + key;
}
std::string child(const std::string& at, std::size_t i) { return child(at, std::to_string(i)); }

double number_from_json(const Json& j, const std::string& at) {
  if (!j.is_number()) throw InputError(at, "expected a number");
  return j.get<double>();
}

const Json& field(const Json& j, const char* key, const std::string& at) {
  if (!j.is_object()) throw InputError(at, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(child(at, key), "missing field");
  return *it;
}

const Json& array_at(const Json& j, const std::string& at) {
  if (!j.is_array()) throw InputError(at, "expected an array");
  return j;
}

template <typename Read>
auto rows_from_json(const Json& j, const std::string& at, Read read) {
  using Scalar = decltype(read(Json(), std::string()));
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m;
  std::string rows_at = at;
  const Json* rows = &j;
  if (j.is_object()) {
    if (j.contains("diag")) {
      const std::string diag_at = child(at, "diag");
      const Json& d = array_at(j["diag"], diag_at);
      m = decltype(m)::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
      for (std::size_t i = 0; i < d.size(); ++i) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = read(d[i], child(diag_at, i));
      }
      return m;
    }
    rows_at = child(at, "rows");
    rows = &field(j, "rows", at);
  }
  array_at(*rows, rows_at);
  const std::size_t n = rows->size();
  if (n == 0) throw InputError(rows_at, "empty matrix");
  const Json& first = array_at((*rows)[0], child(rows_at, std::size_t{0}));
  const std::size_t cols = first.size();
  m.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_at = child(rows_at, i);
    const Json& row = array_at((*rows)[i], row_at);
    if (row.size() != cols) throw InputError(row_at, "ragged row");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = read(row[c], child(row_at, c));
    }
  }
  return m;
}

}  // namespace

Complex complex_from_json(const Json& j, const std::string& at) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) {
    return {number_from_json(j[0], child(at, std::size_t{0})),
            number_from_json(j[1], child(at, std::size_t{1}))};
  }
  throw InputError(at, "expected a number or [re, im]");
}

CVector tuple_from_json(const Json& j, const std::string& at) {
  array_at(j, at);
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], child(at, i));
  return v;
}

RVector real_tuple_from_json(const Json& j, const std::string& at) {
  array_at(j, at);
  RVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number_from_json(j[i], child(at, i));
  return v;
}

CMatrix matrix_from_json(const Json& j, const std::string& at) {
  return rows_from_json(j, at, complex_from_json);
}

RMatrix real_matrix_from_json(const Json& j, const std::string& at) {
  return rows_from_json(j, at, number_from_json);
}

DiscreteMeasure measure_from_json(const Json& j, const std::string& at) {
  const CVector s = tuple_from_json(field(j, "support", at), child(at, "support"));
  const RVector w = real_tuple_from_json(field(j, "weights", at), child(at, "weights"));
  return DiscreteMeasure(std::vector<Complex>(s.begin(), s.end()),
                         std::vector<double>(w.begin(), w.end()));
}

MixedUnitaryChannel channel_from_json(const Json& j, const std::string& at) {
  const std::string terms_at = child(at, "terms");
  const Json& terms = array_at(field(j, "terms", at), terms_at);
  std::vector<UnitaryTerm> out;
  Eigen::Index dim = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string term_at = child(terms_at, i);
    const double w = number_from_json(field(terms[i], "weight", term_at), child(term_at, "weight"));
    CMatrix u = matrix_from_json(field(terms[i], "unitary", term_at), child(term_at, "unitary"));
    dim = u.rows();
    out.push_back({w, std::move(u)});
  }
  if (out.empty()) throw InputError(terms_at, "no terms");
  return MixedUnitaryChannel(dim, std::move(out));
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const RVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(i, c)));
    rows.push_back(std::move(row));
  }
  return Json{{"rows", std::move(rows)}};
}

Json to_json(const RMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    rows.push_back(std::move(row));
  }
  return Json{{"rows", std::move(rows)}};
}

Json to_json(const MixedUnitaryChannel& ch) {
  Json terms = Json::array();
  for (const auto& t : ch.terms()) terms.push_back({{"weight", t.weight}, {"unitary", to_json(t.unitary)}});
  return Json{{"dim", ch.dim()}, {"terms", std::move(terms)}};
}

Json to_json(const PermutationCombination& c) {
  Json terms = Json::array();
  for (const auto& t : c.terms()) terms.push_back({{"weight", t.weight}, {"perm", t.perm}});
  return Json{{"n", c.n()}, {"terms", std::move(terms)}};
}

Json to_json(const DiscreteMeasure& m) {
  Json s = Json::array();
  for (const Complex& z : m.support()) s.push_back(to_json(z));
  return Json{{"support", std::move(s)}, {"weights", m.weights()}};
}

Json to_json(const TransportPlan& p) {
  return Json{{"e", to_json(p.e)},
              {"row_marginals", to_json(p.row_marginals)},
              {"col_marginals", to_json(p.col_marginals)},
              {"marginal_defect", p.marginal_defect()},
              {"support_size", p.support_size()}};
}

Json to_json(const MembershipResult& r) {
  Json out{{"verdict", r.verdict()},
           {"tol", r.tol},
           {"method", r.method},
           {"lambda", to_json(r.lambda)},
           {"mu", to_json(r.mu)},
           {"residual", r.residual}};
  if (r.witness) {
    out["achieved"] = r.achieved;
    out["d"] = to_json(r.d->matrix());
    out["witness"] = to_json(*r.witness);
  }
  if (r.separator) {
    out["separator"] = to_json(*r.separator);
    out["gap"] = r.gap;
  }
  return out;
}

Json to_json(const CorrectionReport& r) {
  Json out{{"d_input", to_json(r.d_input)},
           {"eps_prime", to_json(r.eps_prime)},
           {"lambda_plus", r.lambda_plus},
           {"lambda_minus", r.lambda_minus},
           {"eps_matrix", to_json(r.eps_matrix)},
           {"d_corrected", to_json(r.d_corrected)},
           {"balance", r.balance}};
  if (r.channel) {
    out["eps1"] = r.eps1;
    out["eps2"] = r.eps2;
    out["s"] = r.s;
    out["measured"] = r.measured;
    out["trace_defects"] = r.trace_defects;
    out["bound"] = r.bound;
    out["achieved"] = r.achieved;
    out["lambda"] = to_json(r.lambda);
    out["lambda_prime"] = to_json(r.lambda_prime);
    out["mu"] = to_json(r.mu);
    out["channel"] = to_json(*r.channel);
  }
  return out;
}

Json to_json(const AveragingWitness& w) {
  Json stages = Json::array();
  for (const auto& s : w.stages) stages.push_back(to_json(s));
  Json ledger = Json::object();
  for (const auto& [k, v] : w.ledger) ledger[k] = v;
  return Json{{"source", to_json(w.source)},
              {"target", to_json(w.target)},
              {"achieved", w.achieved},
              {"bound", w.bound},
              {"ratio", w.bound > 0.0 ? w.achieved / w.bound : 0.0},
              {"route", w.route},
              {"ledger", std::move(ledger)},
              {"notes", w.notes},
              {"stages", std::move(stages)}};
}

Json to_json(const TransferReport& r) {
  Json out{{"feasible", r.feasible},
           {"eps", r.eps},
           {"degree", r.degree},
           {"budget", r.budget},
           {"transport_defect", r.transport_defect},
           {"trace_defect", r.trace_defect}};
  if (r.map) {
    Json x = Json::array(), y = Json::array();
    for (const Complex& z : r.map->source_support()) x.push_back(to_json(z));
    for (const Complex& z : r.map->target_support()) y.push_back(to_json(z));
    out["map"] = {{"X", std::move(x)}, {"Y", std::move(y)}, {"S", to_json(r.map->s())["rows"]}};
  }
  return out;
}

}  // namespace orbithull
