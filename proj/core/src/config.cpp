#include "icm/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace icm {

namespace {

using nlohmann::json;

constexpr const char* kVolFields[] = {"mu_v", "kappa_v", "sigma_v", "v0"};

double* vol_field(VolParams& v, std::string_view name) {
  if (name == "mu_v") return &v.mu_v;
  if (name == "kappa_v") return &v.kappa_v;
  if (name == "sigma_v") return &v.sigma_v;
  if (name == "v0") return &v.v0;
  return nullptr;
}

double* investor_field(InvestorParams& p, std::string_view name) {
  if (name == "tau") return &p.tau;
  if (name == "mu_Y") return &p.mu_Y;
  if (name == "kappa_Y") return &p.kappa_Y;
  if (name == "sigma_Y") return &p.sigma_Y;
  if (name == "beta_Y") return &p.beta_Y;
  if (name == "Y0") return &p.Y0;
  if (name == "X0") return &p.X0;
  return nullptr;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) {
    throw ConfigError(where + ": expected a number");
  }
  return j.get<double>();
}

EconomyParams expand(EconomyParams econ, long long replicate_count) {
  if (replicate_count < 0) {
    return econ;
  }
  if (replicate_count == 0) {
    throw ConfigError("replicate: count must be at least 1");
  }
  if (econ.investors.size() != 1) {
    throw ConfigError("replicate: exactly one template investor required");
  }
  return replicate(econ.vol, econ.investors.front(),
                   static_cast<std::size_t>(replicate_count), econ.horizon_T);
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view s, const std::string& where) {
  double x = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError(where + ": cannot parse number '" + std::string(s) + "'");
  }
  return x;
}

}  // namespace

EconomyParams parse_economy_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) {
    throw ConfigError("configuration root must be an object");
  }

  EconomyParams econ;
  if (!root.contains("vol") || !root["vol"].is_object()) {
    throw ConfigError("missing object 'vol'");
  }
  for (const char* f : kVolFields) {
    const auto& vol = root["vol"];
    if (!vol.contains(f)) throw ConfigError(std::string("vol.") + f + " missing");
    *vol_field(econ.vol, f) = number(vol[f], std::string("vol.") + f);
  }
  if (!root.contains("horizon_T")) throw ConfigError("horizon_T missing");
  econ.horizon_T = number(root["horizon_T"], "horizon_T");

  if (!root.contains("investors") || !root["investors"].is_array()) {
    throw ConfigError("missing array 'investors'");
  }
  std::size_t idx = 0;
  for (const auto& item : root["investors"]) {
    const std::string where = "investors[" + std::to_string(idx++) + "]";
    if (!item.is_object()) throw ConfigError(where + ": expected an object");
    if (!item.contains("tau")) throw ConfigError(where + ".tau missing");
    InvestorParams inv;
    inv.tau = 0.0;
    for (const auto& [key, value] : item.items()) {
      double* slot = investor_field(inv, key);
      if (slot == nullptr) {
        throw ConfigError(where + ": unknown field '" + key + "'");
      }
      *slot = number(value, where + "." + key);
    }
    econ.investors.push_back(inv);
  }

  long long rep = -1;
  if (root.contains("replicate")) {
    if (!root["replicate"].is_number_integer()) {
      throw ConfigError("replicate: expected an integer");
    }
    rep = root["replicate"].get<long long>();
  }
  return expand(std::move(econ), rep);
}

EconomyParams parse_economy_keyvalue(std::string_view text) {
  EconomyParams econ;
  std::map<std::size_t, InvestorParams> investors;
  std::map<std::size_t, bool> has_tau;
  bool seen_T = false;
  bool seen_vol[4] = {false, false, false, false};
  long long rep = -1;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const std::string where = "line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));

    if (key == "horizon_T") {
      econ.horizon_T = parse_double(value, where);
      seen_T = true;
    } else if (key == "replicate") {
      rep = static_cast<long long>(parse_double(value, where));
    } else if (key.starts_with("vol.")) {
      const auto name = key.substr(4);
      double* slot = vol_field(econ.vol, name);
      if (slot == nullptr) {
        throw ConfigError(where + ": unknown key '" + std::string(key) + "'");
      }
      *slot = parse_double(value, where);
      for (int i = 0; i < 4; ++i) {
        if (name == kVolFields[i]) seen_vol[i] = true;
      }
    } else if (key.starts_with("investors.")) {
      const auto rest = key.substr(10);
      const auto dot = rest.find('.');
      if (dot == std::string_view::npos) {
        throw ConfigError(where + ": expected investors.<index>.<field>");
      }
      std::size_t index = 0;
      const auto idx_str = rest.substr(0, dot);
      const auto [ptr, ec] = std::from_chars(
          idx_str.data(), idx_str.data() + idx_str.size(), index);
      if (ec != std::errc() || ptr != idx_str.data() + idx_str.size()) {
        throw ConfigError(where + ": bad investor index");
      }
      auto [it, inserted] = investors.try_emplace(index);
      if (inserted) it->second.tau = 0.0;
      const auto field = rest.substr(dot + 1);
      double* slot = investor_field(it->second, field);
      if (slot == nullptr) {
        throw ConfigError(where + ": unknown field '" + std::string(field) +
                          "'");
      }
      *slot = parse_double(value, where);
      if (field == "tau") has_tau[index] = true;
    } else {
      throw ConfigError(where + ": unknown key '" + std::string(key) + "'");
    }
  }

  for (int i = 0; i < 4; ++i) {
    if (!seen_vol[i]) {
      throw ConfigError(std::string("vol.") + kVolFields[i] + " missing");
    }
  }
  if (!seen_T) throw ConfigError("horizon_T missing");
  std::size_t expected = 0;
  for (const auto& [index, inv] : investors) {
    if (index != expected++) {
      throw ConfigError("investor indices must be contiguous from 0");
    }
    if (!has_tau[index]) {
      throw ConfigError("investors." + std::to_string(index) + ".tau missing");
    }
    econ.investors.push_back(inv);
  }
  return expand(std::move(econ), rep);
}

EconomyParams parse_economy(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    return parse_economy_json(text);
  }
  return parse_economy_keyvalue(text);
}

EconomyParams load_economy(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open configuration file '" + path.string() +
                      "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_economy(buf.str());
}

std::string economy_to_json(const EconomyParams& econ, int indent) {
  json root;
  root["vol"] = {{"mu_v", econ.vol.mu_v},
                 {"kappa_v", econ.vol.kappa_v},
                 {"sigma_v", econ.vol.sigma_v},
                 {"v0", econ.vol.v0}};
  root["horizon_T"] = econ.horizon_T;
  root["investors"] = json::array();
  for (const auto& inv : econ.investors) {
    root["investors"].push_back({{"tau", inv.tau},
                                 {"mu_Y", inv.mu_Y},
                                 {"kappa_Y", inv.kappa_Y},
                                 {"sigma_Y", inv.sigma_Y},
                                 {"beta_Y", inv.beta_Y},
                                 {"Y0", inv.Y0},
                                 {"X0", inv.X0}});
  }
  return root.dump(indent);
}

}  // namespace icm
