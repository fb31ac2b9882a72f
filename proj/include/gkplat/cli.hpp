#pragma once

#include <algorithm>
#include <functional>
#include <iostream>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gkplat/json_io.hpp"

// Command-line front end.  Every command reads JSON (file arguments accept
// "-" for standard input), writes a single JSON document to standard output,
// and reports failures as {"error": code, "detail": ...} on standard error.
// Exit codes: 0 success, 1 malformed input, 2 domain violation.

namespace gkplat::cli {

namespace detail {

inline json load_doc(const std::string& file, std::istream& in) {
  std::string text;
  if (file == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else {
    std::ifstream f(file);
    if (!f) throw ParseError("cannot open file '" + file + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

// accepts either the bare document or a wrapper object {key: doc}, so
// command outputs feed back into commands as inputs
inline json unwrap(json j, const std::string& key) {
  if (j.is_object() && j.contains(key)) return j[key];
  return j;
}

inline RatVec parse_vec(const std::string& text) {
  RatVec out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw ParseError("empty component in vector '" + text + "'");
    out.push_back(decode_rat(json(item)));
  }
  if (out.empty()) throw ParseError("empty vector argument");
  return out;
}

inline std::vector<int> parse_word(const std::string& text) {
  std::vector<int> out;
  if (text.find(',') != std::string::npos) {
    std::string item;
    std::istringstream ss(text);
    while (std::getline(ss, item, ','))
      try {
        out.push_back(std::stoi(item));
      } catch (...) {
        throw ParseError("braid word symbol '" + item + "'");
      }
  } else {
    for (char c : text) {
      if (c < '0' || c > '9') throw ParseError("braid word must be digits or comma-separated ints");
      out.push_back(c - '0');
    }
  }
  return out;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"exact lattice algebra for multi-mode GKP codes"};
  app.name("gkplat");
  app.require_subcommand(1);
  // frees the short -h flag; several commands take a --h vector option
  app.set_help_flag("--help", "print help and exit");
  auto add_sub = [&](const std::string& name, const std::string& desc) {
    CLI::App* c = app.add_subcommand(name, desc);
    c->set_help_flag("--help", "print help and exit");
    return c;
  };

  struct {
    std::string gram, u, code, path, matrix, h, word;
    double tol = 1e-6;
    std::string d = "1";
  } o;

  std::function<json()> action;

  auto add_gram = [&](CLI::App* c) {
    c->add_option("--gram", o.gram, "Gram matrix JSON (file or '-')")->required();
  };

  auto* c_frob = add_sub("frobenius", "unique normal form with certificate");
  add_gram(c_frob);
  c_frob->callback([&] {
    action = [&]() -> json {
      auto fd = frobenius_form(decode_gram(detail::unwrap(detail::load_doc(o.gram, in), "gram")));
      return json{{"type", encode_type(fd.type)}, {"u", encode_int_mat(fd.u)}};
    };
  });

  auto* c_type = add_sub("type", "lattice type (Frobenius invariant)");
  add_gram(c_type);
  c_type->callback([&] {
    action = [&]() -> json {
      auto t = lattice_type(decode_gram(detail::unwrap(detail::load_doc(o.gram, in), "gram")));
      return json{{"type", encode_type(t)}};
    };
  });

  auto* c_dual = add_sub("dual-gram", "Gram matrix of the canonical dual basis");
  add_gram(c_dual);
  c_dual->callback([&] {
    action = [&]() -> json {
      auto a = decode_gram(detail::unwrap(detail::load_doc(o.gram, in), "gram"));
      return encode_rat_mat(dual_gram(a));
    };
  });

  auto* c_isauto = add_sub("is-automorphism", "Gram-preservation test");
  add_gram(c_isauto);
  c_isauto->add_option("--u", o.u, "candidate matrix JSON (file or '-')")->required();
  c_isauto->callback([&] {
    action = [&]() -> json {
      auto a = decode_gram(detail::unwrap(detail::load_doc(o.gram, in), "gram"));
      auto u = decode_int_mat(detail::unwrap(detail::load_doc(o.u, in), "u"));
      return json{{"is_automorphism", is_gram_preserving(a, u)}};
    };
  });

  auto* c_gfg = add_sub("gram-from-generator", "round M J M^T to an integer Gram matrix");
  c_gfg->add_option("--matrix", o.matrix, "generator matrix JSON (file or '-')")->required();
  c_gfg->add_option("--tol", o.tol, "rounding tolerance")->capture_default_str();
  c_gfg->callback([&] {
    action = [&]() -> json {
      auto m = decode_float_mat(detail::unwrap(detail::load_doc(o.matrix, in), "matrix"));
      return encode_gram(gram_from_generator(m, o.tol));
    };
  });

  auto* c_conj = add_sub("conjugate", "conjugate a code by an automorphism");
  c_conj->add_option("--code", o.code, "code JSON (file or '-')")->required();
  c_conj->add_option("--u", o.u, "automorphism JSON (file or '-')")->required();
  c_conj->callback([&] {
    action = [&]() -> json {
      auto code = decode_code(detail::unwrap(detail::load_doc(o.code, in), "code"));
      auto u = decode_int_mat(detail::unwrap(detail::load_doc(o.u, in), "u"));
      return encode_code(conjugate_by_automorphism(code, u));
    };
  });

  auto* c_disp = add_sub("displace", "conjugate a code by a displacement");
  c_disp->add_option("--code", o.code, "code JSON (file or '-')")->required();
  c_disp->add_option("--h", o.h, "dual coordinates, comma-separated rationals")->required();
  c_disp->callback([&] {
    action = [&]() -> json {
      auto code = decode_code(detail::unwrap(detail::load_doc(o.code, in), "code"));
      return encode_code(displace(code, DualCoords{detail::parse_vec(o.h)}));
    };
  });

  auto* c_eta = add_sub("eta-s", "corrective shift of an automorphism");
  c_eta->add_option("--code", o.code, "code JSON (file or '-')")->required();
  c_eta->add_option("--u", o.u, "automorphism JSON (file or '-')")->required();
  c_eta->callback([&] {
    action = [&]() -> json {
      auto code = decode_code(detail::unwrap(detail::load_doc(o.code, in), "code"));
      auto u = decode_int_mat(detail::unwrap(detail::load_doc(o.u, in), "u"));
      return json{{"eta_s", encode_rat_vec(eta_s(code, u).h)}};
    };
  });

  auto* c_norm = add_sub("normalizer", "normalizer membership of (h, u)");
  c_norm->add_option("--code", o.code, "code JSON (file or '-')")->required();
  c_norm->add_option("--u", o.u, "automorphism JSON (file or '-')")->required();
  c_norm->add_option("--h", o.h, "dual coordinates, comma-separated rationals")->required();
  c_norm->callback([&] {
    action = [&]() -> json {
      auto code = decode_code(detail::unwrap(detail::load_doc(o.code, in), "code"));
      auto u = decode_int_mat(detail::unwrap(detail::load_doc(o.u, in), "u"));
      return json{{"in_normalizer", in_normalizer(code, DualCoords{detail::parse_vec(o.h)}, u)}};
    };
  });

  auto* c_logical = add_sub("logical-action", "logical Clifford gate of (h, u)");
  c_logical->add_option("--code", o.code, "code JSON (file or '-')")->required();
  c_logical->add_option("--u", o.u, "automorphism JSON (file or '-')")->required();
  c_logical->add_option("--h", o.h, "dual coordinates, comma-separated rationals")->required();
  c_logical->callback([&] {
    action = [&]() -> json {
      auto code = decode_code(detail::unwrap(detail::load_doc(o.code, in), "code"));
      auto u = decode_int_mat(detail::unwrap(detail::load_doc(o.u, in), "u"));
      return encode_gate(logical_action(code, DualCoords{detail::parse_vec(o.h)}, u));
    };
  });

  auto* c_lift = add_sub("lift", "fold a path word over its base code");
  c_lift->add_option("--path", o.path, "path JSON (file or '-')")->required();
  c_lift->callback([&] {
    action = [&]() -> json {
      auto w = decode_path(detail::unwrap(detail::load_doc(o.path, in), "path"));
      return encode_lift_result(lift(w));
    };
  });

  auto* c_braid = add_sub("braid", "gate of a braid word on the scaled code");
  c_braid->add_option("--d", o.d, "scaling (positive integer)")->required();
  c_braid->add_option("--word", o.word, "braid word, e.g. 121 or 1,2,-1")->required();
  c_braid->callback([&] {
    action = [&]() -> json {
      Int d = decode_int(json(o.d));
      return encode_gate(braid_to_gate(d, detail::parse_word(o.word)));
    };
  });

  auto* c_snap = add_sub("snap", "replace flow runs by snapped automorphisms");
  c_snap->add_option("--path", o.path, "path JSON (file or '-')")->required();
  c_snap->add_option("--tol", o.tol, "snap tolerance")->capture_default_str();
  c_snap->callback([&] {
    action = [&]() -> json {
      auto w = decode_path(detail::unwrap(detail::load_doc(o.path, in), "path"));
      return encode_path(snap_flow(w, o.tol));
    };
  });

  try {
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(std::move(args));
    json doc = action();
    out << doc.dump() << "\n";
    return 0;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << json{{"error", "usage"}, {"detail", e.what()}}.dump() << "\n";
    return 1;
  } catch (const Error& e) {
    err << json{{"error", e.code()}, {"detail", e.what()}}.dump() << "\n";
    return e.kind() == ErrorKind::Shape ? 1 : 2;
  } catch (const std::exception& e) {
    err << json{{"error", "internal"}, {"detail", e.what()}}.dump() << "\n";
    return 1;
  }
}

inline int run(int argc, char** argv) {
  return run(std::vector<std::string>(argv + 1, argv + argc), std::cin, std::cout, std::cerr);
}

}  // namespace gkplat::cli
