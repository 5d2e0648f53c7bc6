#ifndef NSG_CLI_HPP_
#define NSG_CLI_HPP_

#include <array>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "constructions.hpp"
#include "explorer.hpp"
#include "io.hpp"
#include "semigroup.hpp"
#include "sumsets.hpp"
#include "wilf.hpp"

namespace nsg::cli {

  enum class Format { table, json, csv };

  inline constexpr int exit_ok         = 0;
  inline constexpr int exit_mismatch   = 1;
  inline constexpr int exit_invalid    = 2;
  inline constexpr int exit_violations = 3;

  struct TableOneRow {
    char const* label;
    integer     m, p, l, g, w0, w;
  };

  // The five near-misses of genus <= 60 and their published invariants.
  inline constexpr std::array<TableOneRow, 5> table_one{{
      {"<14,22,23>_56", 14, 7, 13, 43, -1, 35},
      {"<16,25,26>_64", 16, 9, 13, 51, -1, 53},
      {"<17,26,28>_68", 17, 10, 13, 55, -1, 62},
      {"<17,27,28>_68", 17, 10, 13, 55, -1, 62},
      {"<18,28,29>_72", 18, 11, 13, 59, -1, 71},
  }};

  // Thread count: the flag if given, else NSG_THREADS, else the hardware.
  inline unsigned resolve_threads(int flag) {
    if (flag > 0) {
      return static_cast<unsigned>(flag);
    }
    if (char const* env = std::getenv("NSG_THREADS")) {
      char* end   = nullptr;
      long  value = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && value > 0) {
        return static_cast<unsigned>(value);
      }
    }
    return std::max(1u, std::thread::hardware_concurrency());
  }

  namespace detail {

    inline void print_aligned(std::ostream&                                 out,
                              std::vector<std::vector<std::string>> const& rows) {
      std::vector<std::size_t> width;
      for (auto const& row : rows) {
        width.resize(std::max(width.size(), row.size()), 0);
        for (std::size_t i = 0; i < row.size(); ++i) {
          width[i] = std::max(width[i], row[i].size());
        }
      }
      for (auto const& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          out << (i ? "  " : "") << std::left
              << std::setw(static_cast<int>(i + 1 == row.size() ? 0 : width[i])) << row[i];
        }
        out << '\n';
      }
    }

    inline std::vector<std::string> report_cells(WilfReport const& r) {
      std::vector<std::string> out;
      for (integer v : {r.m, r.c, r.q, r.rho, r.genus, r.p_total, r.p_left, r.l_count,
                        r.dq_count, r.pq_count, r.w, r.w0}) {
        out.push_back(std::to_string(v));
      }
      out.push_back(r.near_miss ? "true" : "false");
      return out;
    }

    inline void print_records(std::ostream& out, explore::RecordList const& records,
                              Format format) {
      if (format == Format::json) {
        for (auto const& rec : records) {
          out << json{{"label", rec.label}, {"report", rec.report}}.dump() << '\n';
        }
        return;
      }
      std::vector<std::vector<std::string>> rows{{"S", "m", "P", "L", "g", "W0", "W"}};
      for (auto const& rec : records) {
        std::string label = rec.label;
        if (format == Format::csv) {
          std::replace(label.begin(), label.end(), ',', ';');
        }
        auto const& r = rec.report;
        rows.push_back({label, std::to_string(r.m), std::to_string(r.p_total),
                        std::to_string(r.l_count), std::to_string(r.genus),
                        std::to_string(r.w0), std::to_string(r.w)});
      }
      if (format == Format::csv) {
        for (auto const& row : rows) {
          for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << row[i];
          }
          out << '\n';
        }
      } else {
        print_aligned(out, rows);
      }
    }

    inline void print_report(std::ostream& out, NumericalSemigroup const& s, Format format,
                             bool with_profile) {
      auto const r = wilf_report(s);
      if (format == Format::json) {
        json j = report_json(r, s);
        if (with_profile) {
          auto const profile = slice_profile(s);
          json       rows    = json::array();
          for (auto const& row : profile.rows) {
            rows.push_back({{"j", row.j}, {"X", row.apery}, {"P", row.primitives},
                            {"D", row.decomposables}});
          }
          j["slices"]    = rows;
          j["Xq_and_D"]  = profile.apery_top_decomposable;
        }
        out << j.dump() << '\n';
        return;
      }
      if (format == Format::csv) {
        out << report_csv_header << '\n' << report_csv_row(r, s) << '\n';
        return;
      }
      std::vector<std::vector<std::string>> rows{{"S", canonical_label(s)}};
      std::array<char const*, 13> names{"m",  "c",  "q",  "rho", "genus", "P",        "PL",
                                        "L",  "Dq", "Pq", "W",   "W0",    "near_miss"};
      auto const cells = report_cells(r);
      for (std::size_t i = 0; i < names.size(); ++i) {
        rows.push_back({names[i], cells[i]});
      }
      print_aligned(out, rows);
      if (with_profile) {
        auto const profile = slice_profile(s);
        out << '\n';
        std::vector<std::vector<std::string>> prow{{"j", "X", "P", "D"}};
        for (auto const& row : profile.rows) {
          prow.push_back({std::to_string(row.j), std::to_string(row.apery),
                          std::to_string(row.primitives), std::to_string(row.decomposables)});
        }
        print_aligned(out, prow);
        out << "Xq_and_D   " << profile.apery_top_decomposable << '\n';
      }
    }

    inline void print_construction(std::ostream& out, ConstructionResult const& result,
                                   VerificationReport const& verification, Format format) {
      if (format == Format::json) {
        out << construction_json(result, verification).dump() << '\n';
        return;
      }
      if (format == Format::csv) {
        out << report_csv_header << ",verified\n"
            << report_csv_row(result.computed, result.semigroup) << ','
            << (verification.passed() ? "true" : "false") << '\n';
        return;
      }
      auto const& p = result.predicted;
      out << "recipe     " << recipe_name(result.recipe) << '\n'
          << "S          " << canonical_label(result.semigroup) << '\n'
          << "A          " << nsg::detail::show(result.params.left_set) << '\n'
          << "predicted  n=" << p.n << " c=" << p.c_expected << " |L|=" << p.l_expected
          << " |D4|=" << p.d4_expected << " W0=" << p.w0_expected << " J=[" << p.j_lo
          << ", " << p.j_hi << "]\n\n";
      print_report(out, result.semigroup, Format::table, false);
      out << '\n';
      std::vector<std::vector<std::string>> rows{{"check", "result", "detail"}};
      for (auto const& c : verification.checks) {
        rows.push_back({c.name, c.passed ? "pass" : "FAIL", c.detail});
      }
      print_aligned(out, rows);
    }

    inline void print_minima(std::ostream& out, explore::MinimaTable const& table,
                             Format format) {
      std::vector<std::vector<std::string>> rows{
          {"m", "n", "min_W0_minus_rho", "semigroups", "minimizers", "flagged_minimizers",
           "flagged_total", "cond1", "cond2", "cond3", "exact", "example"}};
      for (auto const& [key, e] : table) {
        std::string example = e.example;
        if (format == Format::csv) {
          std::replace(example.begin(), example.end(), ',', ';');
        }
        if (format == Format::json) {
          out << json{{"m", e.m},
                      {"n", e.n},
                      {"min_W0_minus_rho", e.minimum},
                      {"semigroups", e.semigroups},
                      {"minimizers", e.minimizers},
                      {"flagged_minimizers", e.flagged_minimizers},
                      {"flagged_total", e.flagged_total},
                      {"conditions_among_minimizers", e.flag_counts},
                      {"exact", e.exact()},
                      {"example", e.example}}
                     .dump()
              << '\n';
          continue;
        }
        rows.push_back({std::to_string(e.m), std::to_string(e.n), std::to_string(e.minimum),
                        std::to_string(e.semigroups), std::to_string(e.minimizers),
                        std::to_string(e.flagged_minimizers), std::to_string(e.flagged_total),
                        std::to_string(e.flag_counts[0]), std::to_string(e.flag_counts[1]),
                        std::to_string(e.flag_counts[2]), e.exact() ? "true" : "false",
                        example});
      }
      if (format == Format::csv) {
        for (auto const& row : rows) {
          for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << row[i];
          }
          out << '\n';
        }
      } else if (format == Format::table) {
        print_aligned(out, rows);
      }
    }

    inline IntSet parse_set(std::string const& text, std::optional<integer> modulus = {}) {
      return IntSet(parse_int_list(text), modulus);
    }

  }  // namespace detail

  // Runs one command line (args excludes the program name). Normal output
  // goes to `out`, diagnostics and usage to `err`.
  inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical semigroups: Wilf invariants, near-miss constructions and "
                 "exhaustive genus exploration"};
    app.name("nsg");
    app.require_subcommand(1);

    std::map<std::string, Format> const formats{
        {"table", Format::table}, {"json", Format::json}, {"csv", Format::csv}};
    Format format = Format::table;
    bool   format_given = false;
    app.add_option_function<Format>(
           "--format", [&](Format const& f) { format = f, format_given = true; },
           "Output format: table, json or csv")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    int thread_flag = 0;
    app.add_option("--threads", thread_flag, "Worker threads (default: NSG_THREADS or all cores)")
        ->check(CLI::PositiveNumber);

    // inspect
    auto*       inspect = app.add_subcommand("inspect", "Print the Wilf report of a semigroup");
    std::string inspect_input;
    bool        inspect_profile = false;
    inspect->add_option("semigroup", inspect_input, "Label such as \"<14,22,23>_56\" or JSON object")
        ->required();
    inspect->add_flag("--profile", inspect_profile, "Also print the slice profile");

    // construct
    auto* construct = app.add_subcommand("construct", "Build a near-miss construction");
    construct->require_subcommand(1);
    integer     c_m = 0, c_a = 0, c_b = 0, c_k = 0, c_n = 0;
    std::string c_set;
    auto* c_pair = construct->add_subcommand("pair", "<m,a,b>_4m");
    c_pair->add_option("--m", c_m)->required();
    c_pair->add_option("--a", c_a)->required();
    c_pair->add_option("--b", c_b)->required();
    auto* c_consecutive = construct->add_subcommand("consecutive", "<m,a,a+1>_4m, a=(3m+k)/2");
    c_consecutive->add_option("--m", c_m)->required();
    c_consecutive->add_option("--k", c_k)->required();
    auto* c_bh = construct->add_subcommand("bh", "<{m} ∪ A>_4m for a B3 set A");
    c_bh->add_option("--m", c_m)->required();
    c_bh->add_option("--set", c_set, "A, comma separated")->required();
    auto* c_translated = construct->add_subcommand("translated", "A = (3m+k)/2 + A'");
    c_translated->add_option("--set", c_set, "A' (contains 0), comma separated")->required();
    c_translated->add_option("--k", c_k)->required();
    c_translated->add_option("--m", c_m)->required();
    auto* c_explicit = construct->add_subcommand("explicit", "A' = {3^i - 1}, m = 3k+6r+2");
    c_explicit->add_option("--n", c_n)->required();
    c_explicit->add_option("--k", c_k)->required();

    // bh
    auto* bh = app.add_subcommand("bh", "Sumsets and B_h sets");
    bh->require_subcommand(1);
    std::string            bh_set;
    unsigned               bh_h = 2;
    std::optional<integer> bh_mod;
    integer                bh_m = 0;
    std::size_t            bh_size = 1;
    unsigned               bh_count = 1;
    bool                   bh_zero = false;
    // "--h" is the sumset order, so these commands keep only "--help".
    auto bh_command = [&](char const* name, char const* description) {
      auto* sub = bh->add_subcommand(name, description);
      sub->set_help_flag("--help", "Print this help message and exit");
      return sub;
    };
    auto* bh_check = bh_command("check", "Is A a B_h set?");
    bh_check->add_option("--set", bh_set)->required();
    bh_check->add_option("--h", bh_h)->required()->check(CLI::PositiveNumber);
    bh_check->add_option("--mod", bh_mod, "Work in Z/mZ")->check(CLI::PositiveNumber);
    auto* bh_sum = bh_command("sumset", "Print hA");
    bh_sum->add_option("--set", bh_set)->required();
    bh_sum->add_option("--h", bh_h)->required()->check(CLI::PositiveNumber);
    bh_sum->add_option("--mod", bh_mod, "Work in Z/mZ")->check(CLI::PositiveNumber);
    auto* bh_induces = bh_command("induces", "Does A induce a B_h set in Z/mZ?");
    bh_induces->add_option("--set", bh_set)->required();
    bh_induces->add_option("--m", bh_m)->required()->check(CLI::PositiveNumber);
    bh_induces->add_option("--h", bh_h)->required()->check(CLI::PositiveNumber);
    auto* bh_union = bh_command("union", "Are A ∪ 2A ∪ ... ∪ hA pairwise distinct mod m?");
    bh_union->add_option("--set", bh_set)->required();
    bh_union->add_option("--m", bh_m)->required()->check(CLI::PositiveNumber);
    bh_union->add_option("--h", bh_h)->required()->check(CLI::PositiveNumber);
    auto* bh_greedy = bh_command("greedy", "Greedy B_h set starting at 0");
    bh_greedy->add_option("--h", bh_h)->required()->check(CLI::PositiveNumber);
    bh_greedy->add_option("--size", bh_size)->required()->check(CLI::PositiveNumber);
    auto* bh_geometric = bh_command("geometric", "{h^i} or {h^i - 1}");
    bh_geometric->add_option("--h", bh_h)->required()->check(CLI::PositiveNumber);
    bh_geometric->add_option("--count", bh_count)->required()->check(CLI::PositiveNumber);
    bh_geometric->add_flag("--zero-based", bh_zero);

    // exploration commands share these
    int         g_max = 0;
    std::string checkpoint_path, resume_path;
    double      checkpoint_seconds = 600;
    auto add_explore_options = [&](CLI::App* sub, bool checkpoints) {
      sub->add_option("--g-max", g_max, "Largest genus to enumerate")
          ->required()
          ->check(CLI::Range(0, explore::max_genus));
      sub->add_option("--threads", thread_flag, "Worker threads")->check(CLI::PositiveNumber);
      if (checkpoints) {
        sub->add_option("--checkpoint", checkpoint_path, "Periodically write the frontier here");
        sub->add_option("--checkpoint-interval", checkpoint_seconds, "Seconds between checkpoints")
            ->check(CLI::PositiveNumber);
        sub->add_option("--resume", resume_path, "Continue from a checkpoint file");
      }
    };

    auto*              hunt = app.add_subcommand("hunt", "List every semigroup with W0 < 0");
    std::optional<int> hunt_q;
    int                hunt_m_min = 1, hunt_m_max = 1 << 20;
    bool               hunt_exhaustive = false;
    add_explore_options(hunt, true);
    hunt->add_option("--q", hunt_q, "Only semigroups with this q")->check(CLI::PositiveNumber);
    hunt->add_option("--m-min", hunt_m_min, "Smallest multiplicity")->check(CLI::PositiveNumber);
    hunt->add_option("--m-max", hunt_m_max, "Largest multiplicity")->check(CLI::PositiveNumber);
    hunt->add_flag("--exhaustive", hunt_exhaustive, "Also evaluate q <= 3 semigroups");

    auto* census = app.add_subcommand("census", "Count semigroups by genus");
    add_explore_options(census, true);

    auto* scan = app.add_subcommand("scan", "Scan q = 4 semigroups for the W0 lower bound");
    scan->require_subcommand(1);
    auto* scan_bound = scan->add_subcommand("bound", "Violations of W0 >= -C(n,3)");
    add_explore_options(scan_bound, true);
    auto*              scan_minima = scan->add_subcommand("minima", "Minima of W0 - rho per (m, n)");
    std::optional<int> minima_m;
    add_explore_options(scan_minima, false);
    scan_minima->add_option("--m", minima_m, "Only this multiplicity")->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "Reproduce published tables");
    verify->require_subcommand(1);
    auto* verify_table1 = verify->add_subcommand("table1", "The five near-misses of genus <= 60");

    for (auto* sub : {construct, bh, hunt, census, scan, verify, inspect}) {
      sub->add_option_function<Format>(
             "--format", [&](Format const& f) { format = f, format_given = true; },
             "Output format: table, json or csv")
          ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    }
    for (auto* sub : {c_pair, c_consecutive, c_bh, c_translated, c_explicit, scan_bound,
                      scan_minima, verify_table1, bh_check, bh_sum, bh_induces, bh_union,
                      bh_greedy, bh_geometric}) {
      sub->add_option_function<Format>(
             "--format", [&](Format const& f) { format = f, format_given = true; },
             "Output format: table, json or csv")
          ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    }

    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (CLI::CallForHelp const&) {
      out << app.help();
      return exit_ok;
    } catch (CLI::CallForAllHelp const&) {
      out << app.help("", CLI::AppFormatMode::All);
      return exit_ok;
    } catch (CLI::ParseError const& e) {
      err << "error: " << e.what() << "\n\n" << app.help();
      return exit_invalid;
    }

    explore::ExploreOptions opts;
    opts.threads             = resolve_threads(thread_flag);
    opts.checkpoint_path     = checkpoint_path;
    opts.resume_path         = resume_path;
    opts.checkpoint_interval = std::chrono::milliseconds(
        static_cast<std::int64_t>(checkpoint_seconds * 1000));

    try {
      if (inspect->parsed()) {
        detail::print_report(out, parse_semigroup(inspect_input), format, inspect_profile);
        return exit_ok;
      }

      if (construct->parsed()) {
        ConstructionResult result;
        if (c_pair->parsed()) {
          result = construct_pair(c_m, c_a, c_b);
        } else if (c_consecutive->parsed()) {
          result = construct_consecutive(c_m, c_k);
        } else if (c_bh->parsed()) {
          result = construct_bh(c_m, detail::parse_set(c_set));
        } else if (c_translated->parsed()) {
          result = construct_translated(detail::parse_set(c_set), c_k, c_m);
        } else {
          result = explicit_family(c_n, c_k);
        }
        auto const verification = verify_construction(result);
        detail::print_construction(out, result, verification, format);
        return verification.passed() ? exit_ok : exit_mismatch;
      }

      if (bh->parsed()) {
        auto print_bool = [&](bool value) {
          if (format == Format::json) {
            out << json(value).dump() << '\n';
          } else {
            out << (value ? "true" : "false") << '\n';
          }
        };
        auto print_set = [&](IntSet const& a) {
          if (format == Format::json) {
            out << to_json_value(a).dump() << '\n';
            return;
          }
          auto const& xs = a.elements();
          for (std::size_t i = 0; i < xs.size(); ++i) {
            out << (i ? "," : "") << xs[i];
          }
          out << '\n';
        };
        if (bh_check->parsed()) {
          print_bool(is_bh(detail::parse_set(bh_set, bh_mod), bh_h));
        } else if (bh_sum->parsed()) {
          print_set(h_fold_sumset(detail::parse_set(bh_set, bh_mod), bh_h));
        } else if (bh_induces->parsed()) {
          print_bool(induces_bh_mod(detail::parse_set(bh_set), bh_m, bh_h));
        } else if (bh_union->parsed()) {
          print_bool(pairwise_distinct_union(detail::parse_set(bh_set), bh_h, bh_m));
        } else if (bh_greedy->parsed()) {
          print_set(greedy_bh(bh_h, bh_size));
        } else {
          print_set(geometric_bh_family(bh_h, bh_count, bh_zero));
        }
        return exit_ok;
      }

      if (hunt->parsed()) {
        explore::HuntFilters filters;
        filters.q     = hunt_q;
        filters.m_min = hunt_m_min;
        filters.m_max = hunt_m_max;
        auto const outcome
            = explore::explore(g_max, explore::HuntPolicy{filters, hunt_exhaustive}, opts);
        detail::print_records(out, outcome.result, format_given ? format : Format::json);
        std::uint64_t total = 0;
        for (auto c : outcome.counts) {
          total += c;
        }
        err << "# " << outcome.result.size() << " near-miss(es) among " << total
            << " semigroups of genus <= " << g_max << " (" << outcome.seconds << " s)\n";
        return exit_ok;
      }

      if (census->parsed()) {
        auto const counts = explore::census(g_max, opts);
        Format const f    = format_given ? format : Format::csv;
        if (f == Format::json) {
          for (std::size_t g = 0; g < counts.size(); ++g) {
            out << json{{"genus", g}, {"count", counts[g]}}.dump() << '\n';
          }
        } else {
          std::vector<std::vector<std::string>> rows{{"genus", "count"}};
          for (std::size_t g = 0; g < counts.size(); ++g) {
            rows.push_back({std::to_string(g), std::to_string(counts[g])});
          }
          if (f == Format::csv) {
            for (auto const& row : rows) {
              out << row[0] << ',' << row[1] << '\n';
            }
          } else {
            detail::print_aligned(out, rows);
          }
        }
        return exit_ok;
      }

      if (scan_bound->parsed()) {
        auto const violations = explore::scan_conjecture_bound(g_max, opts);
        detail::print_records(out, violations, format_given ? format : Format::json);
        err << "# " << violations.size() << " violation(s) of W0 >= -C(n,3) among q = 4 "
            << "semigroups of genus <= " << g_max << '\n';
        return violations.empty() ? exit_ok : exit_violations;
      }

      if (scan_minima->parsed()) {
        auto const table = explore::scan_conjecture_minima(g_max, minima_m, opts);
        detail::print_minima(out, table, format);
        return exit_ok;
      }

      if (verify_table1->parsed()) {
        bool                                  all = true;
        std::vector<std::vector<std::string>> rows{
            {"S", "m", "P", "L", "g", "W0", "W", "match"}};
        json lines = json::array();
        for (auto const& row : table_one) {
          auto const s = parse_semigroup(row.label);
          auto const r = wilf_report(s);
          bool const ok = canonical_label(s) == row.label && r.m == row.m
                          && r.p_total == row.p && r.l_count == row.l && r.genus == row.g
                          && r.w0 == row.w0 && r.w == row.w;
          all = all && ok;
          std::string label = canonical_label(s);
          if (format == Format::csv) {
            std::replace(label.begin(), label.end(), ',', ';');
          }
          rows.push_back({label, std::to_string(r.m), std::to_string(r.p_total),
                          std::to_string(r.l_count), std::to_string(r.genus),
                          std::to_string(r.w0), std::to_string(r.w), ok ? "yes" : "NO"});
          lines.push_back({{"label", canonical_label(s)}, {"report", r}, {"match", ok}});
        }
        if (format == Format::json) {
          for (auto const& j : lines) {
            out << j.dump() << '\n';
          }
        } else if (format == Format::csv) {
          for (auto const& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
              out << (i ? "," : "") << row[i];
            }
            out << '\n';
          }
        } else {
          detail::print_aligned(out, rows);
        }
        return all ? exit_ok : exit_mismatch;
      }
    } catch (hypothesis_violation const& e) {
      err << "error: " << e.what() << '\n';
      return exit_invalid;
    } catch (error const& e) {
      err << "error: " << e.what() << '\n';
      return exit_invalid;
    }
    return exit_invalid;
  }

}  // namespace nsg::cli

#endif  // NSG_CLI_HPP_
