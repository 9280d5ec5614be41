#include "ncycle/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncycle/counting.hpp"
#include "ncycle/pairing.hpp"
#include "ncycle/polynomial.hpp"
#include "ncycle/reduction.hpp"
#include "ncycle/rmt.hpp"
#include "ncycle/word.hpp"

namespace ncycle::cli {

namespace {

using nlohmann::json;

constexpr const char* kRotationNote =
    "Rotation offset r denotes l_{r+1}...l_n l_1...l_r; offset 0 is the word "
    "itself.";

constexpr const char* kWordNote =
    "Words: letters a..z are generators 1..26 and uppercase letters their "
    "inverses (\"AbBABa\"), or a JSON array of signed generator indices "
    "(\"[1,-2]\").";

json word_json(const Word& w) {
  json codes = json::array();
  for (Letter l : w.letters()) codes.push_back(l.code());
  return codes;
}

json pairing_json(const HalfPairing& p) {
  json j;
  j["n"] = p.n();
  j["pairs"] = json::array();
  for (auto [r, s] : p.pairs()) j["pairs"].push_back({r, s});
  j["singletons"] = p.singletons();
  j["orientations"] = json::array();
  for (Orientation o : p.orientations()) {
    j["orientations"].push_back(o == Orientation::out ? "out" : "in");
  }
  return j;
}

std::vector<Block> parse_blocks(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("malformed blocks JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("pairs")) {
    // HalfPairing JSON schema.
    std::vector<Block> blocks;
    for (const auto& pr : j.at("pairs")) blocks.push_back(pr.get<Block>());
    for (int s : j.at("singletons").get<std::vector<int>>()) blocks.push_back({s});
    return blocks;
  }
  if (!j.is_array()) throw InvalidArgument("blocks must be a JSON array");
  try {
    return j.get<std::vector<Block>>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("blocks must be arrays of integers: ") +
                          e.what());
  }
}

int max_point(const std::vector<Block>& blocks) {
  int n = 0;
  for (const Block& b : blocks)
    for (int i : b) n = std::max(n, i);
  return n;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::string reduced_key(const std::string& key) {
  return key.empty() ? "(e)" : key;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot open " + path + " for writing");
  f << content;
}

R1Choice parse_r1(const std::string& s) {
  if (s == "as-printed") return R1Choice::as_printed;
  return R1Choice::degree_consistent;
}

/// Options shared by the word-based subcommands.
struct WordArgs {
  std::string text;
  int gens = 0;

  Word word() const {
    const int n = gens > 0 ? gens : infer_alphabet_size(text);
    return parse_word(text, n);
  }
};

void add_word_args(CLI::App* sub, WordArgs& args) {
  sub->add_option("word", args.text, kWordNote)->required();
  sub->add_option("--gens,--n", args.gens,
                  "Alphabet size N (default: largest generator in the word)")
      ->check(CLI::Range(1, 1 << 20));
}

struct Handler {
  CLI::App* app;
  std::function<int()> run;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Cyclic reduction, half-pairings and cycle-lemma counting in "
               "free groups"};
  app.name("ncycle");
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Emit JSON instead of text")
      ->configurable(false);
  app.fallthrough();

  std::vector<Handler> handlers;

  // reduce ------------------------------------------------------------------
  WordArgs reduce_args;
  {
    auto* sub = app.add_subcommand("reduce", "Linear reduction of a word");
    add_word_args(sub, reduce_args);
    handlers.push_back({sub, [&] {
      Word w = reduce_args.word();
      Word r = linear_reduce(w);
      if (as_json) {
        out << json{{"word", word_json(w)},
                    {"reduced", word_json(r)},
                    {"length", r.size()}}
                   .dump()
            << '\n';
      } else {
        out << to_string(r) << '\n';
      }
      return kSuccess;
    }});
  }

  // cyclic-reduce -----------------------------------------------------------
  WordArgs cyclic_args;
  {
    auto* sub = app.add_subcommand(
        "cyclic-reduce",
        "Canonical cyclic reduction and the standard cyclic reduction");
    add_word_args(sub, cyclic_args);
    handlers.push_back({sub, [&] {
      Word w = cyclic_args.word();
      Word c = cyclic_reduce(w);
      Word hat = standard_cyclic_reduction(w);
      if (as_json) {
        out << json{{"word", word_json(w)},
                    {"cyclic_reduction", word_json(c)},
                    {"standard", word_json(hat)},
                    {"k", c.size()}}
                   .dump()
            << '\n';
      } else {
        out << to_string(c) << '\n';
      }
      return kSuccess;
    }});
  }

  // good-rotations ----------------------------------------------------------
  WordArgs rot_args;
  {
    auto* sub = app.add_subcommand(
        "good-rotations", "Rotations with good reduction (count equals k)");
    sub->footer(kRotationNote);
    add_word_args(sub, rot_args);
    handlers.push_back({sub, [&] {
      Word w = rot_args.word();
      auto rots = good_rotations(w);
      const std::size_t k = cyclic_length(w);
      if (as_json) {
        out << json{{"k", k}, {"rotations", rots}}.dump() << '\n';
      } else {
        out << "k=" << k << " rotations=[" << join(rots) << "]\n";
      }
      return rots.size() == k ? kSuccess : kVerificationFailed;
    }});
  }

  // profile -----------------------------------------------------------------
  WordArgs profile_args;
  std::size_t horizon = 0;
  {
    auto* sub = app.add_subcommand(
        "profile", "Reduced lengths t_i of the prefixes of w w w ...");
    add_word_args(sub, profile_args);
    sub->add_option("--horizon", horizon,
                    "Number of prefixes (default 2(floor(n(1+n/k)) + n))");
    handlers.push_back({sub, [&] {
      Word w = profile_args.word();
      ReductionProfile prof =
          horizon ? reduction_profile(w, horizon) : reduction_profile(w);
      if (as_json) {
        out << json{{"n", w.size()},
                    {"k", prof.cyclic_length()},
                    {"horizon", prof.horizon()},
                    {"period_start", prof.period_start()},
                    {"periodic_after", prof.periodic_after()},
                    {"values", prof.values()}}
                   .dump()
            << '\n';
      } else {
        out << "n=" << w.size() << " k=" << prof.cyclic_length()
            << " horizon=" << prof.horizon()
            << " period_start=" << prof.period_start()
            << " periodic_after=" << prof.periodic_after() << '\n';
        out << "t=" << join(prof.values()) << '\n';
      }
      return kSuccess;
    }});
  }

  // decompose ---------------------------------------------------------------
  WordArgs decomp_args;
  {
    auto* sub = app.add_subcommand(
        "decompose", "Split w = x core y with x y reducible to 1");
    add_word_args(sub, decomp_args);
    handlers.push_back({sub, [&] {
      Word w = decomp_args.word();
      Decomposition d = standard_decomposition(w);
      if (as_json) {
        out << json{{"x", word_json(d.x)},
                    {"core", word_json(d.core)},
                    {"y", word_json(d.y)}}
                   .dump()
            << '\n';
      } else {
        out << "x=" << to_string(d.x) << " core=" << to_string(d.core)
            << " y=" << to_string(d.y) << '\n';
      }
      return is_valid_decomposition(w, d) ? kSuccess : kVerificationFailed;
    }});
  }

  // pairing -----------------------------------------------------------------
  WordArgs pairing_args;
  std::string pairing_blocks;
  {
    auto* sub = app.add_subcommand(
        "pairing",
        "The unique admissible half-pairing of a word, or check a given one");
    add_word_args(sub, pairing_args);
    sub->add_option("--blocks", pairing_blocks,
                    "Check this partition instead, e.g. [[1,6],[2,5],[3],[4]]");
    handlers.push_back({sub, [&] {
      Word w = pairing_args.word();
      if (!pairing_blocks.empty()) {
        auto blocks = parse_blocks(pairing_blocks);
        const int n = static_cast<int>(w.size());
        const bool half = is_half_pairing(n, blocks);
        const bool wp = half && is_w_pairing(w, blocks);
        const bool adm = half && is_w_admissible(w, blocks);
        if (as_json) {
          out << json{{"half_pairing", half},
                      {"w_pairing", wp},
                      {"w_admissible", adm}}
                     .dump()
              << '\n';
        } else {
          out << "half_pairing=" << std::boolalpha << half
              << " w_pairing=" << wp << " w_admissible=" << adm << '\n';
        }
        return adm ? kSuccess : kVerificationFailed;
      }
      HalfPairing p = admissible_half_pairing(w);
      Word hat = standard_cyclic_reduction(w);
      if (as_json) {
        json j = pairing_json(p);
        j["dots"] = to_dots(p).colors;
        j["standard"] = word_json(hat);
        out << j.dump() << '\n';
      } else {
        out << render_ascii(p) << '\n';
        out << "dots=" << to_dots(p).colors << " standard=" << to_string(hat)
            << '\n';
      }
      return kSuccess;
    }});
  }

  // dots --------------------------------------------------------------------
  std::string dots_text;
  std::string dots_blocks;
  {
    auto* sub = app.add_subcommand(
        "dots", "Convert between dot diagrams (B/W strings) and half-pairings");
    sub->add_option("diagram", dots_text, "B/W string read clockwise from 1");
    sub->add_option("--blocks", dots_blocks,
                    "Half-pairing to convert to a dot diagram");
    handlers.push_back({sub, [&] {
      if (!dots_blocks.empty()) {
        auto blocks = parse_blocks(dots_blocks);
        HalfPairing p = HalfPairing::from_blocks(max_point(blocks), blocks);
        const std::string d = to_dots(p).colors;
        if (as_json) {
          out << json{{"dots", d}}.dump() << '\n';
        } else {
          out << d << '\n';
        }
        return kSuccess;
      }
      if (dots_text.empty()) {
        throw InvalidArgument("give a B/W diagram or --blocks");
      }
      HalfPairing p = from_dots(parse_dots(dots_text));
      if (as_json) {
        out << pairing_json(p).dump() << '\n';
      } else {
        out << render_ascii(p) << '\n';
      }
      return kSuccess;
    }});
  }

  // enumerate-pairings ------------------------------------------------------
  int enum_len = 0;
  int enum_k = 0;
  {
    auto* sub = app.add_subcommand(
        "enumerate-pairings", "All half-pairings of [n] with k through strings");
    sub->add_option("--len,--n", enum_len, "Number of points n")->required();
    sub->add_option("--k", enum_k, "Number of through strings")->required();
    handlers.push_back({sub, [&] {
      auto all = enumerate_half_pairings(enum_len, enum_k);
      if (as_json) {
        json arr = json::array();
        for (const auto& p : all) {
          json j = pairing_json(p);
          j["dots"] = to_dots(p).colors;
          arr.push_back(j);
        }
        out << json{{"count", all.size()}, {"pairings", arr}}.dump() << '\n';
      } else {
        for (const auto& p : all) {
          out << to_dots(p).colors << "  " << render_ascii(p) << '\n';
        }
        out << "count=" << all.size() << '\n';
      }
      return kSuccess;
    }});
  }

  // count -------------------------------------------------------------------
  int count_len = 0;
  int count_k = 0;
  int count_gens = 1;
  bool count_table = false;
  std::string count_csv;
  {
    auto* sub = app.add_subcommand(
        "count", "Words of length n with a given reduction of length k");
    sub->add_option("--len,--n", count_len, "Word length n")->required();
    sub->add_option("--k", count_k, "Reduced length k (k >= 1)");
    sub->add_option("--gens", count_gens, "Alphabet size N")
        ->check(CLI::Range(1, 1 << 20));
    sub->add_flag("--table", count_table,
                  "Print the whole triangle s[n][k] for n <= --len");
    sub->add_option("--csv", count_csv, "Also write the triangle as CSV");
    handlers.push_back({sub, [&] {
      if (count_table || !count_csv.empty()) {
        MomentTable t(count_gens, count_len);
        if (!count_csv.empty()) write_file(count_csv, t.to_csv());
        if (count_table) {
          out << (as_json ? t.to_json() + "\n" : t.to_csv());
          return kSuccess;
        }
      }
      BigInt v = s_count(count_len, count_k, count_gens);
      if (as_json) {
        out << json{{"n", count_len}, {"k", count_k}, {"gens", count_gens},
                    {"count", v.str()}}
                   .dump()
            << '\n';
      } else {
        out << v << '\n';
      }
      return kSuccess;
    }});
  }

  // census ------------------------------------------------------------------
  int census_len = 0;
  int census_gens = 1;
  CensusOptions census_opts;
  std::string census_csv;
  {
    auto* sub = app.add_subcommand(
        "census", "Tally standard cyclic reductions over all words of length n");
    sub->add_option("--len,--n", census_len, "Word length n")->required();
    sub->add_option("--gens", census_gens, "Alphabet size N")
        ->check(CLI::Range(1, 26));
    sub->add_option("--budget", census_opts.budget,
                    "Maximum word-steps (2N)^n * n");
    sub->add_option("--threads", census_opts.threads, "Worker threads")
        ->check(CLI::Range(1u, 1024u));
    sub->add_option("--csv", census_csv, "Also write counts as CSV");
    handlers.push_back({sub, [&] {
      Census c = census(census_len, census_gens, census_opts);
      if (!census_csv.empty()) write_file(census_csv, c.to_csv());
      if (as_json) {
        out << c.to_json() << '\n';
      } else {
        for (const auto& [key, count] : c.counts) {
          out << reduced_key(key) << ' ' << count << '\n';
        }
        out << "total=" << c.total() << '\n';
      }
      return kSuccess;
    }});
  }

  // kesten ------------------------------------------------------------------
  int kesten_len = 0;
  int kesten_gens = 1;
  {
    auto* sub = app.add_subcommand(
        "kesten", "Number of length-n words reducible to 1 (Kesten moment)");
    sub->add_option("--len,--n", kesten_len, "Word length n")->required();
    sub->add_option("--gens", kesten_gens, "Alphabet size N")
        ->check(CLI::Range(1, 1 << 20));
    handlers.push_back({sub, [&] {
      BigInt v = kesten_moment(kesten_len, kesten_gens);
      if (as_json) {
        out << json{{"n", kesten_len}, {"gens", kesten_gens},
                    {"moment", v.str()}}
                   .dump()
            << '\n';
      } else {
        out << v << '\n';
      }
      return kSuccess;
    }});
  }

  // verify-xtoq -------------------------------------------------------------
  int xq_len = 0;
  int xq_gens = 1;
  CensusOptions xq_opts;
  {
    auto* sub = app.add_subcommand(
        "verify-xtoq",
        "Check the census of x^n against Q_n + s_{n,n-2} Q_{n-2} + ...");
    sub->add_option("--len,--n", xq_len, "Exponent n")->required();
    sub->add_option("--gens", xq_gens, "Alphabet size N")->check(CLI::Range(1, 26));
    sub->add_option("--budget", xq_opts.budget, "Maximum word-steps");
    sub->add_option("--threads", xq_opts.threads, "Worker threads")
        ->check(CLI::Range(1u, 1024u));
    handlers.push_back({sub, [&] {
      XToQReport r = verify_x_to_Q(xq_len, xq_gens, xq_opts);
      if (as_json) {
        json rows = json::array();
        for (const auto& row : r.rows) {
          rows.push_back({{"k", row.k},
                          {"classes", row.classes.str()},
                          {"class_size", row.expected_size.str()}});
        }
        out << json{{"pass", r.pass},
                    {"total", r.total.str()},
                    {"rows", rows},
                    {"violations", r.violations}}
                   .dump()
            << '\n';
      } else {
        for (const auto& row : r.rows) {
          out << "k=" << row.k << " classes=" << row.classes
              << " class_size=" << row.expected_size << '\n';
        }
        out << "total=" << r.total << '\n';
        for (const auto& v : r.violations) out << "violation: " << v << '\n';
        out << (r.pass ? "pass" : "FAIL") << '\n';
      }
      return r.pass ? kSuccess : kVerificationFailed;
    }});
  }

  // poly / verify-poly ------------------------------------------------------
  int poly_len = 0;
  int poly_gens = 1;
  std::string poly_method = "triangle";
  std::string poly_r1 = "degree-consistent";
  auto add_poly_args = [&](CLI::App* sub) {
    sub->add_option("--len,--n", poly_len, "Index n (n >= 1)")->required();
    sub->add_option("--gens", poly_gens, "Alphabet size N")
        ->check(CLI::Range(1, 26));
    sub->add_option("--method", poly_method,
                    "triangle (exact inversion) or recurrence")
        ->check(CLI::IsMember({"triangle", "recurrence"}));
    sub->add_option("--r1", poly_r1, "Recurrence start R_1: x or 1")
        ->check(CLI::IsMember({"degree-consistent", "as-printed"}));
  };
  auto chosen_poly = [&] {
    return poly_method == "recurrence"
               ? P_from_recurrence(poly_len, poly_gens, parse_r1(poly_r1))
               : P_from_triangle(poly_len, poly_gens);
  };
  {
    auto* sub = app.add_subcommand("poly", "Fluctuation polynomial P_n");
    add_poly_args(sub);
    handlers.push_back({sub, [&] {
      IntPolynomial p = chosen_poly();
      if (as_json) {
        out << json{{"n", poly_len}, {"gens", poly_gens},
                    {"method", poly_method},
                    {"coefficients", json::parse(p.to_json())},
                    {"text", p.to_string()}}
                   .dump()
            << '\n';
      } else {
        out << p.to_string() << '\n';
      }
      return kSuccess;
    }});
  }
  CensusOptions vp_opts;
  {
    auto* sub = app.add_subcommand(
        "verify-poly", "Check that P_n(x) reduces to Q_n under the census");
    add_poly_args(sub);
    sub->add_option("--budget", vp_opts.budget, "Maximum word-steps");
    handlers.push_back({sub, [&] {
      IntPolynomial p = chosen_poly();
      QIdentityReport r = verify_Q_identity(p, poly_len, poly_gens, vp_opts);
      // The triangle polynomial must hit Q_n exactly; the recurrence one is
      // accepted up to a multiple of the identity.
      const bool ok = poly_method == "triangle" ? r.exact : r.up_to_constant;
      if (as_json) {
        out << json{{"polynomial", p.to_string()},
                    {"exact", r.exact},
                    {"up_to_constant", r.up_to_constant},
                    {"identity_constant", r.identity_constant.str()},
                    {"violations", r.violations},
                    {"pass", ok}}
                   .dump()
            << '\n';
      } else {
        out << "P=" << p.to_string() << '\n';
        if (r.exact) {
          out << "image = Q_" << poly_len << '\n';
        } else if (r.up_to_constant) {
          out << "image = Q_" << poly_len << " + " << r.identity_constant
              << " e\n";
        } else {
          for (const auto& v : r.violations) out << "violation: " << v << '\n';
        }
        out << (ok ? "pass" : "FAIL") << '\n';
      }
      return ok ? kSuccess : kVerificationFailed;
    }});
  }

  // rmt ---------------------------------------------------------------------
  rmt::SimConfig sim;
  std::optional<std::uint64_t> sim_seed;
  int sim_kmax = 4;
  std::string sim_config_path;
  std::string sim_csv;
  CLI::App* rmt_sub = nullptr;
  {
    auto* sub = rmt_sub = app.add_subcommand(
        "rmt", "Monte Carlo check of moments and fluctuation diagonalization");
    sub->add_option("--config", sim_config_path,
                    "JSON file with any of: size, gens, trials, max_power, "
                    "kmax, seed, z, bias, threads");
    sub->add_option("--size", sim.matrix_size, "Matrix size m");
    sub->add_option("--gens", sim.gens, "Number of unitaries N");
    sub->add_option("--trials", sim.trials, "Number of trials T");
    sub->add_option("--max-power", sim.max_power, "Largest power p_max");
    sub->add_option("--kmax", sim_kmax, "Largest P_k in the covariance matrix");
    sub->add_option("--seed", sim_seed, "Master seed (printed when omitted)");
    sub->add_option("--z", sim.z_threshold, "z-score threshold");
    sub->add_option("--bias", sim.bias_allowance,
                    "Moment bias allowance c, tolerance 3 SE + c/m^2");
    sub->add_option("--threads", sim.threads, "Worker threads")
        ->check(CLI::Range(1u, 1024u));
    sub->add_option("--csv", sim_csv, "Write the covariance report as CSV");
    handlers.push_back({sub, [&] {
      if (!sim_config_path.empty()) {
        std::ifstream f(sim_config_path);
        if (!f) throw InvalidArgument("cannot read " + sim_config_path);
        json cfg;
        try {
          cfg = json::parse(f);
        } catch (const json::parse_error& e) {
          throw InvalidArgument(std::string("malformed config: ") + e.what());
        }
        auto given = [&](const char* flag) {
          return rmt_sub->get_option(flag)->count() > 0;
        };
        if (cfg.contains("size") && !given("--size")) sim.matrix_size = cfg["size"];
        if (cfg.contains("gens") && !given("--gens")) sim.gens = cfg["gens"];
        if (cfg.contains("trials") && !given("--trials")) sim.trials = cfg["trials"];
        if (cfg.contains("max_power") && !given("--max-power")) {
          sim.max_power = cfg["max_power"];
        }
        if (cfg.contains("kmax") && !given("--kmax")) sim_kmax = cfg["kmax"];
        if (cfg.contains("seed") && !given("--seed")) {
          sim_seed = cfg["seed"].get<std::uint64_t>();
        }
        if (cfg.contains("z") && !given("--z")) sim.z_threshold = cfg["z"];
        if (cfg.contains("bias") && !given("--bias")) sim.bias_allowance = cfg["bias"];
        if (cfg.contains("threads") && !given("--threads")) sim.threads = cfg["threads"];
      }
      if (!sim_seed) {
        std::random_device rd;
        sim_seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
      }
      sim.seed = *sim_seed;
      sim.max_power = std::max(sim.max_power, sim_kmax);
      sim.validate();

      rmt::TraceSamples samples = rmt::sample_traces(sim);
      rmt::DiagonalizationReport rep = rmt::diagonalization_report(samples, sim_kmax);
      if (!sim_csv.empty()) write_file(sim_csv, rep.to_csv());

      bool ok = rep.p_diagonal() && rep.diagonal_positive();
      json moments = json::array();
      std::ostringstream text;
      text << std::setprecision(6);
      text << "seed=" << sim.seed << " m=" << sim.matrix_size
           << " N=" << sim.gens << " T=" << sim.trials << '\n';
      text << "max |U*U - I| = " << samples.max_unitarity_error
           << ", max |X - X*| = " << samples.max_hermiticity_error << '\n';
      text << "p  phi_estimate  std_error  kesten  z  ok\n";
      for (int p = 1; p <= sim.max_power; ++p) {
        rmt::Estimate e = rmt::estimate_phi(samples, p);
        const double target = kesten_moment(p, sim.gens).convert_to<double>();
        const bool good = rmt::phi_consistent(e, target, sim);
        ok = ok && good;
        moments.push_back({{"p", p},
                           {"estimate", e.value},
                           {"std_error", e.std_error},
                           {"kesten", target},
                           {"z", e.z(target)},
                           {"ok", good}});
        text << p << "  " << e.value << "  " << e.std_error << "  " << target
             << "  " << e.z(target) << "  " << (good ? "yes" : "NO") << '\n';
      }
      text << "P basis: max off-diagonal |z| = " << rep.p_max_offdiag_z()
           << (rep.p_diagonal() ? " (diagonal)" : " (NOT diagonal)") << '\n';
      for (int i = 0; i < sim_kmax; ++i) {
        for (int j = 0; j < sim_kmax; ++j) text << std::setw(12) << rep.p_cov(i, j);
        text << '\n';
      }
      text << "monomial basis: max off-diagonal |z| = "
           << rep.mono_max_offdiag_z() << '\n';
      for (int i = 0; i < sim_kmax; ++i) {
        for (int j = 0; j < sim_kmax; ++j) text << std::setw(12) << rep.mono_cov(i, j);
        text << '\n';
      }
      text << (ok ? "pass" : "FAIL") << '\n';

      if (as_json) {
        json j = json::parse(rep.to_json());
        j["seed"] = sim.seed;
        j["size"] = sim.matrix_size;
        j["gens"] = sim.gens;
        j["trials"] = sim.trials;
        j["moments"] = moments;
        j["max_unitarity_error"] = samples.max_unitarity_error;
        j["max_hermiticity_error"] = samples.max_hermiticity_error;
        j["pass"] = ok;
        out << j.dump() << '\n';
      } else {
        out << text.str();
      }
      return ok ? kSuccess : kVerificationFailed;
    }});
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Help requests exit 0; everything else is a usage error.
    return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
  }

  for (const auto& h : handlers) {
    if (!h.app->parsed()) continue;
    try {
      return h.run();
    } catch (const InvalidArgument& e) {
      err << "error: " << e.what() << '\n';
      return kUsageError;
    } catch (const BudgetExceeded& e) {
      err << "error: " << e.what() << '\n';
      return kUsageError;
    }
  }
  return kUsageError;
}

}  // namespace ncycle::cli
