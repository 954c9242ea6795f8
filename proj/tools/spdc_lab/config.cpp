#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "app.hpp"

namespace spdc::app {

using nlohmann::json;

namespace {

// Reads one JSON object, remembering which keys were consumed so that typos
// surface as schema errors instead of silently taking defaults.
class Section {
 public:
  Section(const json& j, std::string path) : path_(std::move(path)) {
    if (j.is_null()) {
      obj_ = json::object();
    } else if (!j.is_object()) {
      throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    } else {
      obj_ = j;
    }
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string& key) const { return obj_.contains(key) && !obj_.at(key).is_null(); }

  Section child(const std::string& key) {
    used_.insert(key);
    return Section(obj_.contains(key) ? obj_.at(key) : json(), field(key));
  }

  double number(const std::string& key, double fallback, double lo, double hi) {
    used_.insert(key);
    if (!has(key)) return fallback;
    const auto& v = obj_.at(key);
    if (!v.is_number()) throw ConfigError(field(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x) || x < lo || x > hi) {
      std::ostringstream os;
      os << "value " << x << " outside [" << lo << ", " << hi << "]";
      throw ConfigError(field(key), os.str());
    }
    return x;
  }

  std::optional<double> optional_number(const std::string& key, double lo, double hi) {
    if (!has(key)) {
      used_.insert(key);
      return std::nullopt;
    }
    return number(key, 0.0, lo, hi);
  }

  std::size_t count(const std::string& key, std::size_t fallback, std::size_t lo, std::size_t hi) {
    used_.insert(key);
    if (!has(key)) return fallback;
    const auto& v = obj_.at(key);
    if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(lo) ||
        v.get<long long>() > static_cast<long long>(hi)) {
      std::ostringstream os;
      os << "expected an integer in [" << lo << ", " << hi << "]";
      throw ConfigError(field(key), os.str());
    }
    return static_cast<std::size_t>(v.get<long long>());
  }

  bool flag(const std::string& key, bool fallback) {
    used_.insert(key);
    if (!has(key)) return fallback;
    if (!obj_.at(key).is_boolean()) throw ConfigError(field(key), "expected true or false");
    return obj_.at(key).get<bool>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    used_.insert(key);
    if (!has(key)) return fallback;
    if (!obj_.at(key).is_string()) throw ConfigError(field(key), "expected a string");
    return obj_.at(key).get<std::string>();
  }

  template <class E>
  E choice(const std::string& key, E fallback, std::initializer_list<std::pair<const char*, E>> options) {
    const auto s = text(key, "");
    if (s.empty()) return fallback;
    std::string allowed;
    for (const auto& [name, value] : options) {
      if (s == name) return value;
      allowed += allowed.empty() ? name : std::string("|") + name;
    }
    throw ConfigError(field(key), "unknown value '" + s + "', expected " + allowed);
  }

  std::pair<double, double> range(const std::string& key, std::pair<double, double> fallback, double lo,
                                  double hi) {
    used_.insert(key);
    if (!has(key)) return fallback;
    const auto& v = obj_.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw ConfigError(field(key), "expected [min, max]");
    }
    const double a = v[0].get<double>();
    const double b = v[1].get<double>();
    if (!(a >= lo && b <= hi && a <= b)) {
      std::ostringstream os;
      os << "range must be ordered and inside [" << lo << ", " << hi << "]";
      throw ConfigError(field(key), os.str());
    }
    return {a, b};
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!used_.count(it.key())) throw ConfigError(field(it.key()), "unknown field");
    }
  }

 private:
  json obj_;
  std::string path_;
  std::set<std::string> used_;
};

const char* name_of(AlphaConvention a) {
  return a == AlphaConvention::consistent ? "consistent" : "paper_literal";
}
const char* name_of(WaistPolicy p) {
  switch (p) {
    case WaistPolicy::fixed: return "fixed";
    case WaistPolicy::co_scale: return "co_scale";
    case WaistPolicy::purity_condition: return "purity_condition";
  }
  return "fixed";
}
const char* name_of(units::FrequencyConvention c) {
  return c == units::FrequencyConvention::angular ? "angular" : "ordinary";
}

}  // namespace

RunConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  RunConfig cfg;
  Section root(doc, "");
  root.text("description", "");

  auto numerics = root.child("numerics");
  cfg.frequency_convention = numerics.choice<units::FrequencyConvention>(
      "frequency_convention", units::FrequencyConvention::angular,
      {{"angular", units::FrequencyConvention::angular}, {"ordinary", units::FrequencyConvention::ordinary}});
  const auto conv = cfg.frequency_convention;
  auto thz = [conv](double v) { return units::thz(v, conv); };

  // crystal
  auto crystal = root.child("crystal");
  cfg.crystal_name = crystal.text("data", "bbo");
  const auto file = crystal.text("file", "");
  auto& src = cfg.source;
  src.length = units::um(crystal.number("length_um", 450.0, 1.0, 1e5));
  src.azimuth = units::deg(crystal.number("azimuth_deg", 0.0, -360.0, 360.0));
  crystal.finish();
  if (!file.empty()) {
    cfg.crystal_file = std::filesystem::path(file).is_absolute() ? std::filesystem::path(file) : base_dir / file;
    if (!std::filesystem::exists(cfg.crystal_file)) {
      throw ConfigError("crystal.file", "no such file: " + cfg.crystal_file.string());
    }
    cfg.crystal_data = load_crystal_file(cfg.crystal_file);
  } else {
    const auto path = crystal_data_dir() / (cfg.crystal_name + ".json");
    if (!std::filesystem::exists(path)) {
      throw ConfigError("crystal.data", "no crystal data '" + cfg.crystal_name + "' in " +
                                            crystal_data_dir().string());
    }
    cfg.crystal_data = load_crystal_file(path);
  }

  // pump
  auto pump = root.child("pump");
  src.lambda_p = units::nm(pump.number("wavelength_nm", 405.0, 100.0, 5000.0));
  src.pump_bandwidth = thz(pump.number("bandwidth_THz", 30.0, 1e-6, 1e4));
  src.pump_power_mW = pump.number("power_mW", 1.0, 1e-9, 1e9);
  src.waist_pump = units::um(pump.number("waist_um", 310.0, 1.0, 1e5));
  auto pump_filter = pump.child("filter");
  src.pump_filter_half_width = thz(pump_filter.number("half_width_THz", 10.0, 1e-6, 1e4));
  src.pump_transmission = pump_filter.number("transmission", 1.0, 0.0, 1.0);
  pump_filter.finish();
  pump.finish();

  // collection
  auto coll = root.child("collection");
  src.lambda_s = units::nm(coll.number("signal_wavelength_nm", 810.0, 100.0, 5000.0));
  const auto idler = coll.optional_number("idler_wavelength_nm", 100.0, 5000.0);
  cfg.degenerate = coll.flag("degenerate", !idler.has_value() &&
                                               std::abs(src.lambda_s - 2.0 * src.lambda_p) < 1e-15);
  if (idler) {
    src.lambda_i = units::nm(*idler);
  } else if (cfg.degenerate) {
    src.lambda_i = src.lambda_s;
  } else {
    src.lambda_i = idler_wavelength(src.lambda_p, src.lambda_s);
    cfg.idler_derived = true;
  }
  const double mismatch = std::abs(1.0 / src.lambda_p - 1.0 / src.lambda_s - 1.0 / src.lambda_i) * src.lambda_p;
  if (mismatch > kEnergyConservationTolerance) {
    std::ostringstream os;
    os << "energy conservation violated (1/lambda_p != 1/lambda_s + 1/lambda_i); for this pump and "
          "signal the idler is "
       << units::to_nm(idler_wavelength(src.lambda_p, src.lambda_s)) << " nm";
    throw ConfigError(idler ? "collection.idler_wavelength_nm" : "collection.signal_wavelength_nm", os.str());
  }
  const double waist = coll.number("waist_um", 145.4, 1.0, 1e5);
  src.waist_signal = units::um(coll.number("signal_waist_um", waist, 1.0, 1e5));
  src.waist_idler = units::um(coll.number("idler_waist_um", waist, 1.0, 1e5));
  src.cut_detuning = units::deg(coll.number("cut_detuning_deg", 1.5, 0.0, 20.0));
  coll.finish();

  // down-conversion filters
  auto filters = root.child("filters");
  auto fs = filters.child("signal");
  auto fi = filters.child("idler");
  const double hw = filters.number("half_width_THz", 5.0, 1e-6, 1e4);
  src.filter_half_width = thz(fs.number("half_width_THz", hw, 1e-6, 1e4));
  const double idler_hw = thz(fi.number("half_width_THz", hw, 1e-6, 1e4));
  src.signal_transmission = fs.number("transmission", 1.0, 0.0, 1.0);
  src.idler_transmission = fi.number("transmission", 1.0, 0.0, 1.0);
  fs.finish();
  fi.finish();
  filters.finish();
  if (std::abs(idler_hw - src.filter_half_width) > 1e-9 * src.filter_half_width) {
    throw ConfigError("filters.idler.half_width_THz", "signal and idler filters must share a half-width");
  }

  // numerics
  auto& m = cfg.metrics;
  m.grid_resolution = numerics.count("grid_resolution", 201, kMinGridResolution, 4001);
  m.jsa.dispersion = numerics.choice<DispersionMode>(
      "dispersion_mode", DispersionMode::exact,
      {{"exact", DispersionMode::exact}, {"linear", DispersionMode::linear}});
  cfg.alpha_convention = numerics.choice<AlphaConvention>(
      "alpha_convention", AlphaConvention::consistent,
      {{"consistent", AlphaConvention::consistent}, {"paper_literal", AlphaConvention::paper_literal},
       {"paper", AlphaConvention::paper_literal}});
  m.decompose = numerics.choice<Decompose>(
      "decompose", Decompose::amplitude, {{"amplitude", Decompose::amplitude}, {"intensity", Decompose::intensity}});
  m.jsa.walk_off = numerics.flag("walk_off_enabled", false);
  m.singles_domain = numerics.choice<SinglesDomain>(
      "singles_domain", SinglesDomain::partner_filtered,
      {{"partner_filtered", SinglesDomain::partner_filtered}, {"pump_window", SinglesDomain::pump_window}});
  m.check_convergence = numerics.flag("convergence_check", true);
  auto trunc = numerics.child("truncation");
  m.truncation.n_max = static_cast<int>(trunc.count("n_max", 20, 4, 60));
  m.truncation.tolerance = trunc.number("tolerance", 1e-4, 1e-12, 1e-1);
  trunc.finish();
  numerics.finish();

  auto eff = root.child("efficiencies");
  m.eta_s = eff.number("signal", 1.0, 0.0, 1.0);
  m.eta_i = eff.number("idler", 1.0, 0.0, 1.0);
  eff.finish();

  auto sweep = root.child("sweep");
  auto& s = cfg.sweep;
  const auto pr = sweep.range("pump_waist_um", {50.0, 800.0}, 1.0, 1e5);
  s.pump_waist_min = units::um(pr.first);
  s.pump_waist_max = units::um(pr.second);
  s.pump_steps = sweep.count("pump_steps", 76, 1, 100000);
  s.policy = sweep.choice<WaistPolicy>("policy", WaistPolicy::purity_condition,
                                       {{"fixed", WaistPolicy::fixed},
                                        {"co_scale", WaistPolicy::co_scale},
                                        {"purity_condition", WaistPolicy::purity_condition}});
  s.tie_alpha = sweep.choice<AlphaConvention>(
      "tie_alpha_convention", AlphaConvention::consistent,
      {{"consistent", AlphaConvention::consistent}, {"paper_literal", AlphaConvention::paper_literal},
       {"paper", AlphaConvention::paper_literal}});
  const auto rr = sweep.range("ratio", {0.3, 1.2}, 1e-3, 100.0);
  s.ratio_min = rr.first;
  s.ratio_max = rr.second;
  s.ratio_steps = sweep.count("ratio_steps", 37, 1, 100000);
  s.scan_points = sweep.count("scan_points", 121, 3, 100000);
  s.coarse_steps = sweep.count("coarse_steps", 31, 3, 100000);
  sweep.finish();
  root.finish();

  refresh_resolved(cfg);
  return cfg;
}

void refresh_resolved(RunConfig& cfg) {
  const auto& src = cfg.source;
  const auto conv = cfg.frequency_convention;
  auto to_thz = [conv](double w) { return units::to_thz(w, conv); };
  const auto& m = cfg.metrics;
  auto data = crystal_to_json(cfg.crystal_data);
  for (const char* key : {"length_um", "cut_angle_deg", "azimuth_deg"}) data.erase(key);
  json crystal = {{"data", cfg.crystal_name},
                  {"length_um", units::to_um(src.length)},
                  {"azimuth_deg", units::to_deg(src.azimuth)},
                  {"dispersion_data", data}};
  if (!cfg.crystal_file.empty()) crystal["file"] = cfg.crystal_file.string();
  cfg.resolved = {
      {"crystal", crystal},
      {"pump",
       {{"wavelength_nm", units::to_nm(src.lambda_p)},
        {"bandwidth_THz", to_thz(src.pump_bandwidth)},
        {"power_mW", src.pump_power_mW},
        {"waist_um", units::to_um(src.waist_pump)},
        {"filter", {{"half_width_THz", to_thz(src.pump_filter_half_width)}, {"transmission", src.pump_transmission}}}}},
      {"collection",
       {{"signal_wavelength_nm", units::to_nm(src.lambda_s)},
        {"idler_wavelength_nm", units::to_nm(src.lambda_i)},
        {"idler_derived", cfg.idler_derived},
        {"degenerate", cfg.degenerate},
        {"signal_waist_um", units::to_um(src.waist_signal)},
        {"idler_waist_um", units::to_um(src.waist_idler)},
        {"cut_detuning_deg", units::to_deg(src.cut_detuning)}}},
      {"filters",
       {{"signal", {{"half_width_THz", to_thz(src.filter_half_width)}, {"transmission", src.signal_transmission}}},
        {"idler", {{"half_width_THz", to_thz(src.filter_half_width)}, {"transmission", src.idler_transmission}}}}},
      {"numerics",
       {{"grid_resolution", m.grid_resolution},
        {"dispersion_mode", m.jsa.dispersion == DispersionMode::exact ? "exact" : "linear"},
        {"alpha_convention", name_of(cfg.alpha_convention)},
        {"decompose", m.decompose == Decompose::amplitude ? "amplitude" : "intensity"},
        {"walk_off_enabled", m.jsa.walk_off},
        {"frequency_convention", name_of(conv)},
        {"singles_domain", m.singles_domain == SinglesDomain::partner_filtered ? "partner_filtered" : "pump_window"},
        {"convergence_check", m.check_convergence},
        {"truncation", {{"n_max", m.truncation.n_max}, {"tolerance", m.truncation.tolerance}}}}},
      {"efficiencies", {{"signal", m.eta_s}, {"idler", m.eta_i}}},
      {"sweep",
       {{"pump_waist_um", {units::to_um(cfg.sweep.pump_waist_min), units::to_um(cfg.sweep.pump_waist_max)}},
        {"pump_steps", cfg.sweep.pump_steps},
        {"policy", name_of(cfg.sweep.policy)},
        {"tie_alpha_convention", name_of(cfg.sweep.tie_alpha)},
        {"ratio", {cfg.sweep.ratio_min, cfg.sweep.ratio_max}},
        {"ratio_steps", cfg.sweep.ratio_steps},
        {"scan_points", cfg.sweep.scan_points},
        {"coarse_steps", cfg.sweep.coarse_steps}}}};
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc, path.parent_path());
}

}  // namespace spdc::app
