#pragma once

// Command-line driver for defectpoly.  Kept in a header so the test suite
// can run commands in-process against string streams.
//
// Exit codes: 0 success, 1 domain or verification failure, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "defectpoly/constructions.hpp"
#include "defectpoly/invariants.hpp"
#include "defectpoly/io.hpp"
#include "defectpoly/parallel.hpp"
#include "defectpoly/repro.hpp"

namespace defectpoly::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

namespace detail {

inline unsigned long parse_natural(const std::string& s, const std::string& what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError(what + " must be a non-negative integer, got '" + s + "'");
  try {
    return std::stoul(s);
  } catch (const std::out_of_range&) {
    throw UsageError(what + " is out of range: '" + s + "'");
  }
}

inline Polytope read_polytope(const std::string& path, Streams io) {
  std::vector<std::size_t> discarded;
  Polytope p = [&] {
    if (path.empty() || path == "-") return parse_polytope(io.in, &discarded);
    std::ifstream file(path);
    if (!file) throw DomainError("cannot read '" + path + "'");
    try {
      return parse_polytope(file, &discarded);
    } catch (const ParseError& e) {
      throw e.with_source(path);
    }
  }();
  if (!discarded.empty()) {
    io.err << "warning: dropped " << discarded.size() << " duplicate or non-extreme input row(s):";
    for (auto i : discarded) io.err << ' ' << i + 1;
    io.err << '\n';
  }
  return p;
}

inline void write_polytope(const Polytope& p, const std::string& path, Streams io) {
  const std::string text = serialize(p);
  if (path.empty() || path == "-") {
    io.out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw DomainError("cannot write '" + path + "'");
  file << text;
}

inline void expect_arity(const std::string& name, const std::vector<std::string>& args,
                         std::size_t n) {
  if (args.size() != n)
    throw UsageError(name + " takes " + std::to_string(n) + " argument(s), got " +
                     std::to_string(args.size()));
}

inline Polytope construct(const std::string& name, const std::vector<std::string>& args, Streams io) {
  if (name == "simplex") {
    expect_arity(name, args, 1);
    return simplex(parse_natural(args[0], "d"));
  }
  if (name == "cube") {
    expect_arity(name, args, 1);
    return cube(parse_natural(args[0], "d"));
  }
  if (name == "hypersimplex") {
    expect_arity(name, args, 2);
    return hypersimplex(parse_natural(args[0], "k"), parse_natural(args[1], "n"));
  }
  if (name == "prism") {
    expect_arity(name, args, 1);
    return prism(read_polytope(args[0], io));
  }
  if (name == "product") {
    expect_arity(name, args, 2);
    return product(read_polytope(args[0], io), read_polytope(args[1], io));
  }
  if (name == "cayley") {
    if (args.empty()) throw UsageError("cayley takes at least one polytope file");
    std::vector<Polytope> factors;
    for (const auto& a : args) factors.push_back(read_polytope(a, io));
    return cayley(std::span<const Polytope>(factors));
  }
  throw UsageError("unknown construction '" + name + "'");
}

inline Polytope transform(const std::vector<std::string>& words, std::string& input, Streams io) {
  if (words.empty()) throw UsageError("transform needs an operation");
  const std::string& op = words[0];
  std::size_t needed = 0;
  if (op == "rpyr" || op == "dilate") {
    needed = 1;
  } else if (op != "prism" && op != "pyramid") {
    throw UsageError("unknown transform '" + op + "'");
  }
  if (words.size() < 1 + needed) throw UsageError(op + " needs an integer argument");
  if (words.size() > 2 + needed) throw UsageError("too many arguments for " + op);
  if (words.size() == 2 + needed) input = words.back();

  if (op == "prism") return prism(read_polytope(input, io));
  if (op == "pyramid") return lattice_pyramid(read_polytope(input, io));
  const unsigned long arg = parse_natural(words[1], op == "rpyr" ? "r" : "t");
  if (op == "rpyr") return r_fold_pyramid(read_polytope(input, io), arg);
  return dilate(read_polytope(input, io), Integer(arg));
}

inline int invariant(const std::string& kind, std::optional<unsigned long> t,
                     const std::string& input, bool json, Streams io) {
  if (kind != "ct" && kind != "c0" && kind != "fpoly" && kind != "ehrhart" && kind != "report")
    throw UsageError("unknown invariant '" + kind + "'");
  if (kind == "ct" && !t) throw UsageError("invariant ct requires --t");
  const Polytope p = read_polytope(input, io);

  Json j;
  j["schema"] = report_schema_version;
  j["kind"] = kind;
  if (kind == "ct" || kind == "c0") {
    const unsigned long tt = kind == "c0" ? 0 : *t;
    const Integer value = ct_invariant(p, tt);
    if (!json) {
      io.out << value << '\n';
      return exit_ok;
    }
    j["t"] = tt;
    j["value"] = value.get_str();
  } else if (kind == "fpoly") {
    const auto f = f_poly(p);
    if (!json) {
      io.out << join(f) << '\n';
      return exit_ok;
    }
    j["coefficients"] = to_json(f);
  } else if (kind == "ehrhart") {
    const Polynomial e = ehrhart(p);
    if (!json) {
      io.out << to_string(e) << '\n';
      return exit_ok;
    }
    j["coefficients"] = to_json(e);
  } else {
    std::vector<unsigned long> extra;
    if (t) extra.push_back(*t);
    const InvariantReport r = report(p, extra);
    if (!json) {
      io.out << to_text(r);
      return exit_ok;
    }
    j = to_json(r);
  }
  io.out << j.dump(2) << '\n';
  return exit_ok;
}

inline int repro(const std::string& mutate, bool json, Streams io) {
  EvaluationConvention conv;
  if (mutate == "sign") {
    conv.alternating_sign = false;
  } else if (mutate == "volume") {
    conv.volume = VolumeNormalization::euclidean;
  } else if (!mutate.empty()) {
    throw UsageError("unknown mutation '" + mutate + "'");
  }
  const auto checks = reproduce_reference_values(conv);
  bool all = true;
  for (const auto& c : checks) all = all && c.pass;

  if (json) {
    Json j;
    j["schema"] = report_schema_version;
    j["pass"] = all;
    Json list = Json::array();
    for (const auto& c : checks) {
      Json item;
      item["check"] = c.name;
      item["expected"] = c.expected;
      item["computed"] = c.computed;
      item["pass"] = c.pass;
      list.push_back(item);
    }
    j["checks"] = list;
    io.out << j.dump(2) << '\n';
  } else {
    std::size_t wn = 5, we = 8, wc = 8;
    for (const auto& c : checks) {
      wn = std::max(wn, c.name.size());
      we = std::max(we, c.expected.size());
      wc = std::max(wc, c.computed.size());
    }
    auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size() + 2, ' '); };
    io.out << pad("check", wn) << pad("expected", we) << pad("computed", wc) << "status\n";
    for (const auto& c : checks)
      io.out << pad(c.name, wn) << pad(c.expected, we) << pad(c.computed, wc)
             << (c.pass ? "PASS" : "FAIL") << '\n';
    if (!all) {
      io.out << "\nmismatches:\n";
      for (const auto& c : checks)
        if (!c.pass)
          io.out << "  " << c.name << "\n    - expected: " << c.expected
                 << "\n    + computed: " << c.computed << '\n';
    }
  }
  return all ? exit_ok : exit_failure;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, Streams io) {
  CLI::App app{"Exact lattice-polytope invariants: c_t, f(P,t), smoothness and defect checks",
               "defectpoly"};
  app.require_subcommand(1);
  app.fallthrough();

  bool json = false;
  unsigned jobs = 1;
  app.add_flag("--json", json, "Machine-readable JSON output");
  app.add_option("--jobs", jobs, "Worker threads for per-face computations (0 = all cores)");

  auto* construct = app.add_subcommand("construct", "Write a standard or derived polytope");
  std::string construct_name;
  std::vector<std::string> construct_args;
  std::string output;
  construct->add_option("name", construct_name, "simplex | cube | hypersimplex | prism | product | cayley")
      ->required();
  construct->add_option("args", construct_args, "Integers, or polytope files for prism/product/cayley");
  construct->add_option("-o,--output", output, "Output file (default stdout)");

  auto* transform = app.add_subcommand("transform", "Apply prism | pyramid | rpyr <r> | dilate <t>");
  std::vector<std::string> transform_words;
  transform->add_option("words", transform_words, "Operation, its argument, optional input file")
      ->required();
  transform->add_option("-o,--output", output, "Output file (default stdout)");

  auto* invariant = app.add_subcommand("invariant", "Compute ct | c0 | fpoly | ehrhart | report");
  std::string kind;
  std::string input;
  std::optional<unsigned long> t;
  invariant->add_option("kind", kind, "ct | c0 | fpoly | ehrhart | report")->required();
  invariant->add_option("input", input, "Polytope file (default stdin)");
  invariant->add_option("--t", t, "Parameter t of c_t (extra c_t row for report)");

  auto* repro = app.add_subcommand("repro", "Recompute every published reference value");
  std::string mutate;
  repro->add_option("--mutate", mutate, "Negative control: sign | volume")->group("");

  auto* equivalent = app.add_subcommand("equivalent", "Test lattice equivalence of two polytopes");
  std::string first, second;
  equivalent->add_option("first", first)->required();
  equivalent->add_option("second", second)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    io.out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    io.out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    io.err << "usage error: " << e.what() << '\n';
    return exit_usage;
  }

  set_default_jobs(jobs);
  try {
    if (*construct) {
      detail::write_polytope(detail::construct(construct_name, construct_args, io), output, io);
      return exit_ok;
    }
    if (*transform) {
      detail::write_polytope(detail::transform(transform_words, input, io), output, io);
      return exit_ok;
    }
    if (*invariant) return detail::invariant(kind, t, input, json, io);
    if (*repro) return detail::repro(mutate, json, io);
    if (*equivalent) {
      const bool eq =
          lattice_equivalent(detail::read_polytope(first, io), detail::read_polytope(second, io));
      if (json) {
        Json j;
        j["schema"] = report_schema_version;
        j["equivalent"] = eq;
        io.out << j.dump(2) << '\n';
      } else {
        io.out << (eq ? 1 : 0) << '\n';
      }
      return exit_ok;
    }
  } catch (const UsageError& e) {
    io.err << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const ParseError& e) {
    io.err << "parse error: " << e.what() << '\n';
    return exit_failure;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << '\n';
    return exit_failure;
  }
  return exit_usage;
}

inline int run(const std::vector<std::string>& args, Streams io) {
  std::vector<const char*> argv{"defectpoly"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), io);
}

}  // namespace defectpoly::cli
