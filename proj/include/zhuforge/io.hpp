#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "zhuforge/assoc.hpp"
#include "zhuforge/assoc_rep.hpp"
#include "zhuforge/bimodule.hpp"
#include "zhuforge/errors.hpp"
#include "zhuforge/report.hpp"
#include "zhuforge/voa.hpp"
#include "zhuforge/zhu.hpp"

namespace zhuforge {

namespace detail {

inline std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
inline std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

inline const json& field(const json& j, const std::string& ptr, const char* key) {
  if (!j.is_object()) throw SchemaError(ptr.empty() ? "/" : ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(child(ptr, key), "missing field");
  return *it;
}

inline long get_int(const json& j, const std::string& ptr) {
  if (!j.is_number_integer()) throw SchemaError(ptr, "expected an integer");
  return j.get<long>();
}

inline std::size_t get_index(const json& j, const std::string& ptr, std::size_t bound) {
  const long v = get_int(j, ptr);
  if (v < 0 || static_cast<std::size_t>(v) >= bound)
    throw SchemaError(ptr, "index " + std::to_string(v) + " outside [0, " + std::to_string(bound) + ")");
  return static_cast<std::size_t>(v);
}

inline Rational get_rational(const json& j, const std::string& ptr) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw SchemaError(ptr, "expected a rational \"p/q\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(ptr, e.what());
  }
}

inline const json& get_array(const json& j, const std::string& ptr) {
  if (!j.is_array()) throw SchemaError(ptr, "expected an array");
  return j;
}

/// [[k, "p/q"], ...] or a bare basis index.
inline SparseVec get_vec(const json& j, const std::string& ptr, std::size_t dim) {
  if (j.is_number_integer()) return SparseVec::unit(dim, get_index(j, ptr, dim));
  get_array(j, ptr);
  SparseVec v(dim);
  for (std::size_t e = 0; e < j.size(); ++e) {
    const std::string p = child(ptr, e);
    if (!j[e].is_array() || j[e].size() != 2) throw SchemaError(p, "expected [index, \"p/q\"]");
    v.add(get_index(j[e][0], child(p, 0), dim), get_rational(j[e][1], child(p, 1)));
  }
  return v;
}

inline std::vector<int> get_dims(const json& j, const std::string& ptr) {
  get_array(j, ptr);
  if (j.empty()) throw SchemaError(ptr, "need at least the weight-0 piece");
  std::vector<int> dims;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const long d = get_int(j[i], child(ptr, i));
    if (d < 0) throw SchemaError(child(ptr, i), "negative dimension");
    dims.push_back(static_cast<int>(d));
  }
  return dims;
}

inline Matrix get_matrix(const json& j, const std::string& ptr, std::size_t rows, std::size_t cols) {
  get_array(j, ptr);
  if (j.size() != rows) throw SchemaError(ptr, "expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string p = child(ptr, r);
    get_array(j[r], p);
    if (j[r].size() != cols) throw SchemaError(p, "expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = get_rational(j[r][c], child(p, c));
  }
  return m;
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    rows.push_back(row);
  }
  return rows;
}

inline json constants_to_json(const ModeTable& t) {
  json out = json::array();
  for (std::size_t a = 0; a < t.source_dim(); ++a)
    for (std::size_t b = 0; b < t.target_dim(); ++b) {
      const auto [lo, hi] = t.mode_range(a, b);
      for (long n = lo; n <= hi; ++n) {
        if (t.classify(a, n, b) != ModeTable::Slot::in_window) continue;
        const SparseVec& v = t.at(a, n, b);
        if (!v.is_zero()) out.push_back({{"a", a}, {"n", n}, {"b", b}, {"out", vec_to_json(v)}});
      }
    }
  return out;
}

/// Reads the constants list into a table; unlisted in-window constants are zero. Grading is not enforced
/// here so that a corrupted document reaches the axiom checkers.
inline ModeTable constants_from_json(const json& j, const std::string& ptr, int cutoff, const std::vector<int>& src,
                                     const std::vector<int>& tgt) {
  ModeTable t(cutoff, src, tgt);
  get_array(j, ptr);
  for (std::size_t e = 0; e < j.size(); ++e) {
    const std::string p = child(ptr, e);
    const std::size_t a = get_index(field(j[e], p, "a"), child(p, "a"), src.size());
    const std::size_t b = get_index(field(j[e], p, "b"), child(p, "b"), tgt.size());
    const long n = get_int(field(j[e], p, "n"), child(p, "n"));
    if (t.classify(a, n, b) != ModeTable::Slot::in_window)
      throw SchemaError(child(p, "n"), "mode outside the stored window for this pair");
    t.set_unchecked(a, n, b, get_vec(field(j[e], p, "out"), child(p, "out"), tgt.size()));
  }
  return t;
}

inline std::vector<std::string> get_labels(const json& j, std::size_t dim) {
  auto it = j.find("labels");
  if (it == j.end() || it->is_null()) return {};
  if (!it->is_array() || it->size() != dim) throw SchemaError("/labels", "expected one label per basis vector");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < dim; ++i) {
    if (!(*it)[i].is_string()) throw SchemaError(child("/labels", i), "expected a string");
    out.push_back((*it)[i].get<std::string>());
  }
  return out;
}

inline void check_cutoff(const json& j, const std::vector<int>& dims) {
  if (j.contains("cutoff") && get_int(j["cutoff"], "/cutoff") != static_cast<long>(dims.size()) - 1)
    throw SchemaError("/cutoff", "cutoff must equal len(dims) - 1");
}

/// Index form when the vector is a single unit basis vector.
inline json compact_vec(const SparseVec& v) {
  if (v.nnz() == 1 && v.begin()->second == Rational(1)) return v.begin()->first;
  return vec_to_json(v);
}

}  // namespace detail

inline json to_json(const TruncatedVOA& v) {
  json j = {{"cutoff", v.cutoff()},
            {"dims", v.dims()},
            {"vacuum", detail::compact_vec(v.vacuum())},
            {"omega", v.omega() ? detail::compact_vec(*v.omega()) : json(nullptr)},
            {"central_charge", v.central_charge().str()},
            {"constants", detail::constants_to_json(v.table())}};
  if (!v.labels().empty()) j["labels"] = v.labels();
  return j;
}

inline TruncatedVOA voa_from_json(const json& j) {
  const auto dims = detail::get_dims(detail::field(j, "", "dims"), "/dims");
  detail::check_cutoff(j, dims);
  const auto weights = weights_from_dims(dims);
  const std::size_t d = weights.size();
  const int cutoff = static_cast<int>(dims.size()) - 1;
  SparseVec vacuum = detail::get_vec(detail::field(j, "", "vacuum"), "/vacuum", d);
  std::optional<SparseVec> omega;
  if (j.contains("omega") && !j["omega"].is_null()) omega = detail::get_vec(j["omega"], "/omega", d);
  const Rational c = j.contains("central_charge") ? detail::get_rational(j["central_charge"], "/central_charge") : Rational(0);
  ModeTable t = detail::constants_from_json(detail::field(j, "", "constants"), "/constants", cutoff, weights, weights);
  try {
    return TruncatedVOA(dims, std::move(vacuum), std::move(omega), c, std::move(t), detail::get_labels(j, d));
  } catch (const std::invalid_argument& e) {
    throw SchemaError("/", e.what());
  } catch (const PreconditionFailed& e) {
    throw SchemaError("/", e.what());
  }
}

inline json to_json(const TruncatedModule& m) {
  json j = {{"cutoff", m.cutoff()},
            {"voa_dims", m.voa_dims()},
            {"dims", m.dims()},
            {"top_level_dim", m.top_level_dim()},
            {"constants", detail::constants_to_json(m.table())}};
  if (!m.labels().empty()) j["labels"] = m.labels();
  return j;
}

inline TruncatedModule module_from_json(const json& j) {
  const auto dims = detail::get_dims(detail::field(j, "", "dims"), "/dims");
  detail::check_cutoff(j, dims);
  const auto voa_dims = detail::get_dims(detail::field(j, "", "voa_dims"), "/voa_dims");
  if (voa_dims.size() != dims.size()) throw SchemaError("/voa_dims", "must have the same length as dims");
  if (j.contains("top_level_dim") && detail::get_int(j["top_level_dim"], "/top_level_dim") != dims.front())
    throw SchemaError("/top_level_dim", "must equal dims[0]");
  const int cutoff = static_cast<int>(dims.size()) - 1;
  const auto degrees = weights_from_dims(dims);
  ModeTable t = detail::constants_from_json(detail::field(j, "", "constants"), "/constants", cutoff,
                                            weights_from_dims(voa_dims), degrees);
  return TruncatedModule(voa_dims, dims, std::move(t), detail::get_labels(j, degrees.size()));
}

inline json to_json(const AssocAlgebra& a) {
  json mult = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k)
      if (!a.product(i, k).is_zero()) mult.push_back({{"i", i}, {"j", k}, {"out", vec_to_json(a.product(i, k))}});
  return {{"dim", a.dim()}, {"name", a.name()}, {"mult", mult}, {"identity", vec_to_json(a.identity())}};
}

inline AssocAlgebra algebra_from_json(const json& j, const std::string& ptr = "") {
  const long dl = detail::get_int(detail::field(j, ptr, "dim"), detail::child(ptr, "dim"));
  if (dl < 1) throw SchemaError(detail::child(ptr, "dim"), "algebra dimension must be positive");
  const auto d = static_cast<std::size_t>(dl);
  std::vector<SparseVec> mult(d * d, SparseVec(d));
  const std::string mp = detail::child(ptr, "mult");
  const json& ml = detail::get_array(detail::field(j, ptr, "mult"), mp);
  for (std::size_t e = 0; e < ml.size(); ++e) {
    const std::string p = detail::child(mp, e);
    const std::size_t i = detail::get_index(detail::field(ml[e], p, "i"), detail::child(p, "i"), d);
    const std::size_t k = detail::get_index(detail::field(ml[e], p, "j"), detail::child(p, "j"), d);
    mult[i * d + k] = detail::get_vec(detail::field(ml[e], p, "out"), detail::child(p, "out"), d);
  }
  SparseVec id = detail::get_vec(detail::field(j, ptr, "identity"), detail::child(ptr, "identity"), d);
  std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
  return AssocAlgebra(d, std::move(mult), std::move(id), std::move(name));
}

inline json actions_to_json(const std::vector<Matrix>& actions) {
  json out = json::array();
  for (const auto& m : actions) out.push_back(detail::matrix_to_json(m));
  return out;
}

inline std::vector<Matrix> actions_from_json(const json& j, const std::string& ptr, std::size_t count, std::size_t dim) {
  detail::get_array(j, ptr);
  if (j.size() != count) throw SchemaError(ptr, "expected one matrix per algebra basis element");
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(detail::get_matrix(j[k], detail::child(ptr, k), dim, dim));
  return out;
}

/// {"dim", "side", "action"}; the algebra is passed in (datasets share one).
inline json to_json(const AlgModule& m, bool with_algebra = true) {
  json j = {{"dim", m.dim()}, {"side", m.side() == Side::left ? "left" : "right"}, {"action", actions_to_json(m.actions())}};
  if (with_algebra) j["algebra"] = to_json(m.algebra());
  return j;
}

inline AlgModule alg_module_from_json(const json& j, AlgebraPtr algebra, const std::string& ptr = "") {
  if (!algebra) algebra = share(algebra_from_json(detail::field(j, ptr, "algebra"), detail::child(ptr, "algebra")));
  const long dl = detail::get_int(detail::field(j, ptr, "dim"), detail::child(ptr, "dim"));
  if (dl < 0) throw SchemaError(detail::child(ptr, "dim"), "negative dimension");
  const auto d = static_cast<std::size_t>(dl);
  Side side = Side::left;
  if (j.contains("side")) {
    const std::string sp = detail::child(ptr, "side");
    if (!j["side"].is_string() || (j["side"] != "left" && j["side"] != "right"))
      throw SchemaError(sp, "expected \"left\" or \"right\"");
    side = j["side"] == "left" ? Side::left : Side::right;
  }
  auto act = actions_from_json(detail::field(j, ptr, "action"), detail::child(ptr, "action"), algebra->dim(), d);
  return AlgModule(algebra, d, std::move(act), side);
}

inline json to_json(const Bimod& b) {
  return {{"dim", b.dim()}, {"left", actions_to_json(b.as_left().actions())}, {"right", actions_to_json(b.as_right().actions())}};
}

inline Bimod bimod_from_json(const json& j, const AlgebraPtr& left, const AlgebraPtr& right, const std::string& ptr = "") {
  const long dl = detail::get_int(detail::field(j, ptr, "dim"), detail::child(ptr, "dim"));
  if (dl < 0) throw SchemaError(detail::child(ptr, "dim"), "negative dimension");
  const auto d = static_cast<std::size_t>(dl);
  auto l = actions_from_json(detail::field(j, ptr, "left"), detail::child(ptr, "left"), left->dim(), d);
  auto r = actions_from_json(detail::field(j, ptr, "right"), detail::child(ptr, "right"), right->dim(), d);
  return Bimod(left, right, d, std::move(l), std::move(r));
}

/// {"algebra": A, "bimodules": [{"name", "dim", "left", "right"}], "modules": [{"name", "dim", "action"}]}.
inline json to_json(const FusionData& d) {
  json bims = json::array(), mods = json::array();
  for (const auto& [name, b] : d.bimodules) {
    json x = to_json(b);
    x["name"] = name;
    bims.push_back(x);
  }
  for (const auto& [name, m] : d.modules) {
    json x = to_json(m, false);
    x["name"] = name;
    mods.push_back(x);
  }
  return {{"algebra", to_json(*d.algebra)}, {"bimodules", bims}, {"modules", mods}};
}

inline FusionData fusion_data_from_json(const json& j) {
  FusionData d;
  d.algebra = share(algebra_from_json(detail::field(j, "", "algebra"), "/algebra"));
  auto name_of = [](const json& x, const std::string& p) {
    const json& n = detail::field(x, p, "name");
    if (!n.is_string()) throw SchemaError(detail::child(p, "name"), "expected a string");
    return n.get<std::string>();
  };
  const json& bl = detail::get_array(detail::field(j, "", "bimodules"), "/bimodules");
  for (std::size_t i = 0; i < bl.size(); ++i) {
    const std::string p = detail::child("/bimodules", i);
    d.bimodules.emplace_back(name_of(bl[i], p), bimod_from_json(bl[i], d.algebra, d.algebra, p));
  }
  const json& ml = detail::get_array(detail::field(j, "", "modules"), "/modules");
  for (std::size_t i = 0; i < ml.size(); ++i) {
    const std::string p = detail::child("/modules", i);
    AlgModule m = alg_module_from_json(ml[i], d.algebra, p);
    if (m.side() != Side::left) throw SchemaError(detail::child(p, "side"), "fusion modules must be left modules");
    d.modules.emplace_back(name_of(ml[i], p), std::move(m));
  }
  return d;
}

/// {basis, degrees, mult_table, identity, omega, o_span_rank}; products above the cutoff are listed as null.
inline json to_json(const ZhuPresentation& z, const TruncatedVOA& v) {
  json basis = json::array(), table = json::array();
  for (auto r : z.representatives()) basis.push_back(v.label(r));
  for (std::size_t i = 0; i < z.dim(); ++i)
    for (std::size_t k = 0; k < z.dim(); ++k) {
      const auto& p = z.product(i, k);
      table.push_back({{"i", i}, {"j", k}, {"out", p ? vec_to_json(*p) : json(nullptr)}});
    }
  return {{"cutoff", z.cutoff()},
          {"basis", basis},
          {"representatives", z.representatives()},
          {"degrees", z.degrees()},
          {"mult_table", table},
          {"identity", detail::compact_vec(z.identity())},
          {"omega", z.omega() ? detail::compact_vec(*z.omega()) : json(nullptr)},
          {"o_span_rank", z.o_span_rank()},
          {"complete", z.complete()},
          {"note", "O(V) is spanned only by a∘b whose whole expansion has weight <= N; the algebra is a "
                   "quotient of the true truncated image and is exact only where stable under raising N"}};
}

inline json to_json(const ZhuBimodule& b, const TruncatedModule& m) {
  json basis = json::array(), left = json::array(), right = json::array();
  for (auto r : b.quotient().representatives()) basis.push_back(m.label(r));
  for (std::size_t k = 0; k < b.algebra().dim(); ++k)
    for (std::size_t j = 0; j < b.dim(); ++j) {
      const auto& l = b.left(k, j);
      const auto& r = b.right(j, k);
      left.push_back({{"a", k}, {"m", j}, {"out", l ? vec_to_json(*l) : json(nullptr)}});
      right.push_back({{"a", k}, {"m", j}, {"out", r ? vec_to_json(*r) : json(nullptr)}});
    }
  return {{"cutoff", m.cutoff()},
          {"dim", b.dim()},
          {"basis", basis},
          {"degrees", b.degrees()},
          {"algebra_dim", b.algebra().dim()},
          {"o_span_rank", b.o_span().rank()},
          {"left", left},
          {"right", right}};
}

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("", "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("", path + ": " + e.what());
  }
}

inline void save_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace zhuforge
