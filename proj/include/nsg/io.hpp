#ifndef NSG_IO_HPP_
#define NSG_IO_HPP_

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "constructions.hpp"
#include "error.hpp"
#include "semigroup.hpp"
#include "sumsets.hpp"
#include "wilf.hpp"

// Text forms: semigroup labels "<a,b,c>_t", the JSON object
// {"generators": [...], "truncation": t | null}, flat JSON / CSV reports.

namespace nsg {

  using json = nlohmann::json;

  namespace detail {

    inline void skip_spaces(std::string_view& s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
      }
    }

    inline bool consume(std::string_view& s, std::string_view token) {
      skip_spaces(s);
      if (s.substr(0, token.size()) == token) {
        s.remove_prefix(token.size());
        return true;
      }
      return false;
    }

    inline integer parse_integer(std::string_view& s, std::string_view what) {
      skip_spaces(s);
      integer value = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
      if (ec == std::errc::result_out_of_range) {
        throw overflow_error(std::string(what) + " out of range");
      }
      if (ec != std::errc{} || ptr == s.data()) {
        throw invalid_spec("expected " + std::string(what) + " near '"
                           + std::string(s.substr(0, 16)) + "'");
      }
      s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
      return value;
    }

  }  // namespace detail

  // "<a1,...,an>" or "<a1,...,an>_t". Accepts ⟨⟩ brackets, ';' separators,
  // surrounding spaces and "_{t}".
  inline GeneratorSpec parse_label(std::string_view text) {
    std::string_view s = text;
    if (!detail::consume(s, "<") && !detail::consume(s, "⟨")) {
      throw invalid_spec("label must start with '<': " + std::string(text));
    }
    GeneratorSpec spec;
    while (true) {
      spec.generators.push_back(detail::parse_integer(s, "generator"));
      if (detail::consume(s, ",") || detail::consume(s, ";")) {
        continue;
      }
      if (detail::consume(s, ">") || detail::consume(s, "⟩")) {
        break;
      }
      throw invalid_spec("malformed label: " + std::string(text));
    }
    if (detail::consume(s, "_")) {
      bool const braced = detail::consume(s, "{");
      spec.truncation   = detail::parse_integer(s, "truncation");
      if (braced && !detail::consume(s, "}")) {
        throw invalid_spec("unclosed '{' in label: " + std::string(text));
      }
    }
    detail::skip_spaces(s);
    if (!s.empty()) {
      throw invalid_spec("trailing characters in label: " + std::string(text));
    }
    return spec;
  }

  inline void to_json(json& j, GeneratorSpec const& spec) {
    j = json{{"generators", spec.generators}, {"truncation", nullptr}};
    if (spec.truncation) {
      j["truncation"] = *spec.truncation;
    }
  }

  inline void from_json(json const& j, GeneratorSpec& spec) {
    if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array()) {
      throw invalid_spec("semigroup object needs a \"generators\" array");
    }
    spec.generators.clear();
    for (auto const& g : j["generators"]) {
      if (!g.is_number_integer()) {
        throw invalid_spec("generators must be integers");
      }
      spec.generators.push_back(g.get<integer>());
    }
    spec.truncation.reset();
    if (j.contains("truncation") && !j["truncation"].is_null()) {
      if (!j["truncation"].is_number_integer()) {
        throw invalid_spec("truncation must be an integer or null");
      }
      spec.truncation = j["truncation"].get<integer>();
    }
  }

  // A label or a JSON object.
  inline GeneratorSpec parse_semigroup_input(std::string_view text) {
    std::string_view s = text;
    detail::skip_spaces(s);
    if (!s.empty() && s.front() == '{') {
      json j;
      try {
        j = json::parse(s);
      } catch (json::exception const& e) {
        throw invalid_spec(std::string("bad semigroup JSON: ") + e.what());
      }
      return j.get<GeneratorSpec>();
    }
    return parse_label(s);
  }

  inline NumericalSemigroup parse_semigroup(std::string_view text) {
    return from_generators(parse_semigroup_input(text));
  }

  // "3,4,5" (spaces allowed).
  inline std::vector<integer> parse_int_list(std::string_view text) {
    std::vector<integer> out;
    std::string_view     s = text;
    detail::skip_spaces(s);
    if (s.empty()) {
      throw invalid_spec("empty integer list");
    }
    while (true) {
      out.push_back(detail::parse_integer(s, "integer"));
      detail::skip_spaces(s);
      if (s.empty()) {
        break;
      }
      if (!detail::consume(s, ",")) {
        throw invalid_spec("malformed integer list: " + std::string(text));
      }
    }
    return out;
  }

  inline void to_json(json& j, WilfReport const& r) {
    j = json{{"m", r.m},       {"c", r.c},        {"q", r.q},
             {"rho", r.rho},   {"genus", r.genus}, {"P", r.p_total},
             {"PL", r.p_left}, {"L", r.l_count},  {"Dq", r.dq_count},
             {"Pq", r.pq_count}, {"W", r.w},      {"W0", r.w0},
             {"near_miss", r.near_miss}};
  }

  inline constexpr std::string_view report_csv_header
      = "m,c,q,rho,genus,P,PL,L,Dq,Pq,W,W0,near_miss,label";

  // Generators in `label` are joined by ';' so every cell stays atomic.
  inline std::string report_csv_row(WilfReport const& r, NumericalSemigroup const& s) {
    std::string out;
    for (integer v : {r.m, r.c, r.q, r.rho, r.genus, r.p_total, r.p_left, r.l_count,
                      r.dq_count, r.pq_count, r.w, r.w0}) {
      out += std::to_string(v);
      out += ',';
    }
    out += r.near_miss ? "true" : "false";
    out += ',';
    out += canonical_label(s, ';');
    return out;
  }

  inline json report_json(WilfReport const& r, NumericalSemigroup const& s) {
    json j       = r;
    j["label"]   = canonical_label(s);
    return j;
  }

  inline json to_json_value(IntSet const& a) {
    return json(a.elements());
  }

  inline json construction_json(ConstructionResult const& result,
                                VerificationReport const& verification) {
    json params   = json::object();
    params["m"]   = result.params.m;
    for (auto [key, value] : {std::pair{"a", result.params.a},
                              std::pair{"b", result.params.b},
                              std::pair{"k", result.params.k},
                              std::pair{"n", result.params.n},
                              std::pair{"r", result.params.r}}) {
      if (value) {
        params[key] = *value;
      }
    }
    params["A"] = result.params.left_set;
    if (!result.params.base_set.empty()) {
      params["A_prime"] = result.params.base_set;
    }
    auto const& p         = result.predicted;
    json        predicted = {{"n", p.n},
                             {"c", p.c_expected},
                             {"q", p.q_expected},
                             {"rho", p.rho_expected},
                             {"L", p.l_expected},
                             {"D4", p.d4_expected},
                             {"W0", p.w0_expected},
                             {"W_min", p.w_min},
                             {"J", {p.j_lo, p.j_hi}}};
    json checks = json::array();
    for (auto const& c : verification.checks) {
      checks.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    return json{{"recipe", recipe_name(result.recipe)},
                {"params", params},
                {"label", canonical_label(result.semigroup)},
                {"predicted", predicted},
                {"computed", result.computed},
                {"verification", {{"passed", verification.passed()}, {"checks", checks}}}};
  }

}  // namespace nsg

#endif  // NSG_IO_HPP_
