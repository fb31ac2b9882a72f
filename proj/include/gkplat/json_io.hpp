#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gkplat/clifford.hpp"
#include "gkplat/exact.hpp"
#include "gkplat/gkp_code.hpp"
#include "gkplat/lattice.hpp"
#include "gkplat/normal_form.hpp"
#include "gkplat/transport.hpp"

// JSON encoding used by the CLI and on-disk formats.
//
//   integers   -> JSON numbers when they fit in 64 bits, decimal strings
//                 otherwise; both accepted on input
//   rationals  -> canonical strings "p/q" ("p" when the denominator is 1)
//   matrices   -> arrays of rows
//   code       -> { "gram": [[int]], "sector": ["p/q", ...] }
//   gate       -> { "type": [int], "vT_modD": [[int]], "pauli": [int] }
//   path       -> { "base": code, "moves": [ {"aut": [[int]]} |
//                   {"displace": ["p/q", ...]} |
//                   {"flow": {"x": [[num]], "t": num}} ] }

namespace gkplat {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// scalars

inline json encode_int(const Int& x) {
  if (x.fits_slong_p()) return json(static_cast<std::int64_t>(x.get_si()));
  return json(x.get_str());
}

inline Int decode_int(const json& j) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    if (s.empty()) throw ParseError("empty integer literal");
    std::size_t k = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (k == s.size()) throw ParseError("integer literal '" + s + "'");
    for (; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9') throw ParseError("integer literal '" + s + "'");
    return Int(s);
  }
  throw ParseError("expected an integer (number or decimal string)");
}

inline json encode_rat(const Rat& q) { return json(q.get_str()); }

inline Rat decode_rat(const json& j) {
  if (j.is_number_integer()) return Rat(decode_int(j));
  if (!j.is_string()) throw ParseError("expected a rational \"p/q\" string");
  const std::string& s = j.get_ref<const std::string&>();
  std::size_t slash = s.find('/');
  if (slash == std::string::npos) return Rat(decode_int(json(s)));
  Int num = decode_int(json(s.substr(0, slash)));
  Int den = decode_int(json(s.substr(slash + 1)));
  return make_rat(num, den);
}

inline json encode_turn(const Turn& t) { return encode_rat(t.value()); }
inline Turn decode_turn(const json& j) { return Turn(decode_rat(j)); }

// ---------------------------------------------------------------------------
// vectors and matrices

inline json encode_int_vec(const IntVec& v) {
  json out = json::array();
  for (const Int& x : v) out.push_back(encode_int(x));
  return out;
}

inline IntVec decode_int_vec(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of integers");
  IntVec out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(decode_int(e));
  return out;
}

inline json encode_rat_vec(const RatVec& v) {
  json out = json::array();
  for (const Rat& q : v) out.push_back(encode_rat(q));
  return out;
}

inline RatVec decode_rat_vec(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  RatVec out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(decode_rat(e));
  return out;
}

inline json encode_int_mat(const IntMat& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(encode_int(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

inline IntMat decode_int_mat(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a non-empty array of rows");
  std::size_t cols = 0;
  for (const json& row : j) {
    if (!row.is_array()) throw ParseError("matrix rows must be arrays");
    if (cols == 0) cols = row.size();
    if (row.size() != cols || cols == 0) throw ParseError("matrix rows must have equal length");
  }
  IntMat m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i)
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = decode_int(j[i][c]);
  return m;
}

inline json encode_rat_mat(const RatMat& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(encode_rat(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

inline json encode_float_mat(const FloatMat& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

inline FloatMat decode_float_mat(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a non-empty array of rows");
  std::size_t cols = 0;
  for (const json& row : j) {
    if (!row.is_array()) throw ParseError("matrix rows must be arrays");
    if (cols == 0) cols = row.size();
    if (row.size() != cols || cols == 0) throw ParseError("matrix rows must have equal length");
  }
  FloatMat m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i)
    for (std::size_t c = 0; c < cols; ++c) {
      const json& e = j[i][c];
      if (!e.is_number()) throw ParseError("expected a numeric matrix entry");
      m(i, c) = e.get<double>();
    }
  return m;
}

// ---------------------------------------------------------------------------
// domain types

inline json encode_gram(const GramMatrix& a) { return encode_int_mat(a.matrix()); }
inline GramMatrix decode_gram(const json& j) { return GramMatrix(decode_int_mat(j)); }

inline json encode_type(const LatticeType& t) { return encode_int_vec(t.entries()); }
inline LatticeType decode_type(const json& j) { return LatticeType(decode_int_vec(j)); }

inline json encode_code(const GkpCode& c) {
  json sector = json::array();
  for (const Turn& t : c.sector()) sector.push_back(encode_turn(t));
  return json{{"gram", encode_gram(c.gram())}, {"sector", std::move(sector)}};
}

inline GkpCode decode_code(const json& j) {
  if (!j.is_object() || !j.contains("gram") || !j.contains("sector"))
    throw ParseError("code object needs \"gram\" and \"sector\"");
  GramMatrix gram = decode_gram(j["gram"]);
  if (!j["sector"].is_array()) throw ParseError("\"sector\" must be an array");
  Sector sector;
  for (const json& e : j["sector"]) sector.push_back(decode_turn(e));
  return GkpCode(std::move(gram), std::move(sector));
}

inline json encode_gate(const LogicalClifford& g) {
  return json{{"type", encode_type(g.type())},
              {"vT_modD", encode_int_mat(g.vt_mod_d())},
              {"pauli", encode_int_vec(g.pauli().label())}};
}

inline json encode_move(const Move& m) {
  if (const auto* am = std::get_if<AutMove>(&m)) return json{{"aut", encode_int_mat(am->u)}};
  if (const auto* dm = std::get_if<DisplaceMove>(&m))
    return json{{"displace", encode_rat_vec(dm->h.h)}};
  const auto& fm = std::get<FlowMove>(m);
  return json{{"flow", json{{"x", encode_float_mat(fm.x)}, {"t", fm.duration}}}};
}

inline Move decode_move(const json& j) {
  if (!j.is_object() || j.size() != 1)
    throw ParseError("move must be an object with exactly one of \"aut\", \"displace\", \"flow\"");
  if (j.contains("aut")) return AutMove{decode_int_mat(j["aut"])};
  if (j.contains("displace")) return DisplaceMove{DualCoords{decode_rat_vec(j["displace"])}};
  if (j.contains("flow")) {
    const json& f = j["flow"];
    if (!f.is_object() || !f.contains("x") || !f.contains("t"))
      throw ParseError("flow move needs \"x\" and \"t\"");
    if (!f["t"].is_number()) throw ParseError("flow duration must be numeric");
    return FlowMove{decode_float_mat(f["x"]), f["t"].get<double>()};
  }
  throw ParseError("unknown move kind");
}

inline json encode_path(const PathWord& w) {
  json moves = json::array();
  for (const Move& m : w.moves) moves.push_back(encode_move(m));
  return json{{"base", encode_code(w.base)}, {"moves", std::move(moves)}};
}

inline PathWord decode_path(const json& j) {
  if (!j.is_object() || !j.contains("base") || !j.contains("moves"))
    throw ParseError("path object needs \"base\" and \"moves\"");
  if (!j["moves"].is_array()) throw ParseError("\"moves\" must be an array");
  PathWord w{decode_code(j["base"]), {}};
  for (const json& e : j["moves"]) w.moves.push_back(decode_move(e));
  return w;
}

inline json encode_lift_result(const LiftResult& r) {
  return json{{"endpoint", encode_code(r.endpoint)},
              {"is_loop", r.is_loop},
              {"gate", r.gate ? encode_gate(*r.gate) : json(nullptr)}};
}

}  // namespace gkplat
