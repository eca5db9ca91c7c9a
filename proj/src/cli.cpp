#include "dsmkit/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dsmkit/adc.hpp"
#include "dsmkit/adversary.hpp"
#include "dsmkit/certify.hpp"
#include "dsmkit/errors.hpp"
#include "dsmkit/performance.hpp"
#include "dsmkit/presets.hpp"
#include "dsmkit/quantizer.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace dsmkit::cli {

namespace {

// 17 significant digits round-trips every double, so traces written this
// way are exact fixtures.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_line(int line_no, const std::string& why) {
  throw ConfigError("config line " + std::to_string(line_no) + ": " + why);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

double to_double(const std::string& tok, int line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    bad_line(line_no, "expected a number, got '" + tok + "'");
  }
}

long long to_ll(const std::string& tok, int line_no) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    bad_line(line_no, "expected an integer, got '" + tok + "'");
  }
}

std::uint64_t to_u64(const std::string& tok, int line_no) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(tok, &pos);
    if (pos != tok.size() || tok.find('-') != std::string::npos) {
      throw std::invalid_argument("trailing characters");
    }
    return v;
  } catch (const std::exception&) {
    bad_line(line_no, "expected an unsigned integer, got '" + tok + "'");
  }
}

std::vector<double> to_doubles(const std::string& value, int line_no) {
  std::vector<double> out;
  for (const auto& tok : split_ws(value)) out.push_back(to_double(tok, line_no));
  if (out.empty()) bad_line(line_no, "expected at least one number");
  return out;
}

bool is_level(double u, const UniformQuantizer& quant) {
  const double slack = 1e-9 * std::max(1.0, std::abs(u));
  return std::abs(u) <= quant.max_level() + slack &&
         std::abs(std::remainder(u, quant.delta())) <= slack;
}

ordered_json num_or_str(double v) {
  // JSON has no inf/nan literals; keep those readable instead of null.
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

PhiFunction make_phi(const std::string& kind) {
  if (kind == "abs") return PhiFunction::abs();
  if (kind == "square") return PhiFunction::square();
  throw ConfigError("config: [phi] kind must be abs or square, got '" + kind + "'");
}

const std::set<std::string>& known_adcs() {
  static const std::set<std::string> names = {"greedy", "dsm-loop",
                                              "classical-dsm1", "memoryless"};
  return names;
}

struct Models {
  StateSpace filter;  // as configured, delay not yet extracted
  UniformQuantizer quant;
  PhiFunction phi;
};

Models resolve_models(const ExperimentConfig& cfg) {
  if (!(cfg.delta > 0.0)) {
    throw ConfigError("config: [quantizer] delta must be set to a positive value");
  }
  if (!cfg.m_unbounded && cfg.m < 1) {
    throw ConfigError("config: [quantizer] m must be >= 1, or 'inf'");
  }
  UniformQuantizer quant = cfg.m_unbounded
                               ? UniformQuantizer::unbounded(cfg.delta)
                               : UniformQuantizer(cfg.delta, cfg.m);
  return Models{cfg.resolve_filter(), std::move(quant), make_phi(cfg.phi_kind)};
}

std::vector<std::unique_ptr<InputSource>> build_ensemble(
    const ExperimentConfig& cfg, const StateSpace& extracted_filter,
    double delta) {
  std::vector<std::unique_ptr<InputSource>> out;
  try {
    for (const auto& e : cfg.ensemble) {
      switch (e.kind) {
        case EnsembleSpec::Kind::IidUniform:
          out.push_back(std::make_unique<IidUniformSource>(
              e.seed_from_run ? cfg.seed : e.seed));
          break;
        case EnsembleSpec::Kind::Constant:
          out.push_back(std::make_unique<ConstantSource>(e.value));
          break;
        case EnsembleSpec::Kind::Sinusoid:
          out.push_back(
              std::make_unique<SinusoidSource>(e.amplitude, e.frequency));
          break;
        case EnsembleSpec::Kind::Adversarial:
          out.push_back(
              std::make_unique<AdversarialSource>(extracted_filter, delta));
          break;
      }
    }
  } catch (const DomainError& e) {
    // parameters came straight from the config file
    throw ConfigError(std::string("config: [ensemble] ") + e.what());
  }
  if (out.empty()) {
    throw ConfigError("config: [ensemble] must declare at least one member");
  }
  return out;
}

fs::path resolve_out(const fs::path& out_dir, const std::string& rel) {
  fs::path p = rel;
  return p.is_absolute() ? p : out_dir / p;
}

std::ofstream open_out(const fs::path& p) {
  const fs::path dir = p.parent_path();
  if (!dir.empty()) fs::create_directories(dir);
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + p.string());
  return out;
}

void write_trace_csv(const fs::path& path, const std::vector<double>& r,
                     const std::vector<double>& u, const std::vector<double>& w,
                     const std::vector<double>& q,
                     const UniformQuantizer& quant) {
  std::ofstream out = open_out(path);
  out << "n,r,u,w,q\n";
  for (std::size_t n = 0; n < r.size(); ++n) {
    if (!(std::abs(r[n]) <= 1.0) || !is_level(u[n], quant)) {
      throw ContractViolationError("trace row " + std::to_string(n) +
                                   " violates |r| <= 1 or u in U_M");
    }
    out << n << ',' << fmt(r[n]) << ',' << fmt(u[n]) << ',' << fmt(w[n]) << ','
        << fmt(q[n]) << '\n';
  }
  if (!out) throw Error("failed writing " + path.string());
}

void write_report(const fs::path& path, const ordered_json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

ordered_json cert_to_json(const Certificate& c) {
  ordered_json j;
  j["cb"] = c.cb;
  j["delay_shifts"] = c.delay_shifts;
  j["delta"] = c.delta;
  j["m_delta"] = num_or_str(c.m_delta);
  j["beta"] = num_or_str(c.beta);
  j["condition_cb_nonzero"] = c.condition_cb_nonzero;
  j["condition_delta_range"] = c.condition_delta_range;
  j["condition_mdelta_gt_1"] = c.condition_mdelta_gt_1;
  j["condition_umax"] = c.condition_umax;
  j["applicable"] = c.applicable;
  j["optimal_value"] = num_or_str(c.optimal_value);
  j["min_applicable_m"] = c.min_applicable_m;
  j["phi"] = c.phi_name;
  j["a_coeffs"] = c.difference_eq.a_coeffs;
  j["b_coeffs"] = c.difference_eq.b_coeffs;
  j["impulse_l1"] = num_or_str(c.impulse_l1);
  j["impulse_tail_bound"] = num_or_str(c.impulse_tail);
  j["max_root_modulus"] = c.max_root_modulus;
  return j;
}

ordered_json stats_to_json(const MemberPerformance& m) {
  ordered_json j;
  j["source"] = m.source;
  j["full_mean"] = m.stats.full_mean;
  j["suffix_mean"] = m.stats.suffix_mean;
  j["max_window_mean"] = m.stats.max_window_mean;
  j["window"] = m.stats.window;
  j["max_abs_q"] = m.max_abs_q;
  j["max_abs_u"] = m.max_abs_u;
  return j;
}

std::string filter_label(const ExperimentConfig& cfg) {
  return cfg.preset.empty() ? "custom" : cfg.preset;
}

}  // namespace

StateSpace ExperimentConfig::resolve_filter() const {
  if (!preset.empty() && matrices) {
    throw ConfigError("config: [filter] takes a preset or explicit matrices, not both");
  }
  if (matrices) return *matrices;
  if (preset.empty()) {
    throw ConfigError("config: [filter] must set preset or the a/b/c matrices");
  }
  if (preset != "dsm1" && preset != "dsm2") {
    throw ConfigError("config: unknown preset '" + preset + "' (known: dsm1, dsm2)");
  }
  return state_space_preset(preset);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);

  ExperimentConfig cfg;
  std::vector<std::vector<double>> a_rows;
  std::vector<double> b_vec, c_vec;
  std::string section;
  std::set<std::string> seen;
  std::string raw;
  int line_no = 0;

  static const std::set<std::string> known_sections = {
      "filter", "quantizer", "phi", "run", "ensemble", "attack", "sweep", "output"};

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') bad_line(line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!known_sections.count(section)) {
        bad_line(line_no, "unknown section [" + section + "]");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) bad_line(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) bad_line(line_no, "empty key");
    if (value.empty()) bad_line(line_no, "empty value for '" + key + "'");
    if (section.empty()) bad_line(line_no, "key '" + key + "' outside any [section]");

    // [ensemble] keys repeat, one member per line; everything else is a scalar
    if (section != "ensemble" && !seen.insert(section + "." + key).second) {
      bad_line(line_no, "duplicate key '" + key + "' in [" + section + "]");
    }

    if (section == "filter") {
      if (key == "preset") {
        cfg.preset = value;
      } else if (key == "a") {
        std::stringstream rows(value);
        std::string row;
        while (std::getline(rows, row, ';')) {
          row = trim(row);
          if (row.empty()) bad_line(line_no, "empty matrix row");
          a_rows.push_back(to_doubles(row, line_no));
        }
        if (a_rows.empty()) bad_line(line_no, "matrix a has no rows");
      } else if (key == "b") {
        b_vec = to_doubles(value, line_no);
      } else if (key == "c") {
        c_vec = to_doubles(value, line_no);
      } else {
        bad_line(line_no, "unknown [filter] key '" + key + "'");
      }
    } else if (section == "quantizer") {
      if (key == "delta") {
        cfg.delta = to_double(value, line_no);
      } else if (key == "m") {
        if (value == "inf" || value == "unbounded") {
          cfg.m_unbounded = true;
        } else {
          cfg.m = to_ll(value, line_no);
        }
      } else {
        bad_line(line_no, "unknown [quantizer] key '" + key + "'");
      }
    } else if (section == "phi") {
      if (key == "kind") cfg.phi_kind = value;
      else bad_line(line_no, "unknown [phi] key '" + key + "'");
    } else if (section == "run") {
      if (key == "horizon") cfg.horizon = to_ll(value, line_no);
      else if (key == "window") cfg.window = to_ll(value, line_no);
      else if (key == "seed") cfg.seed = to_u64(value, line_no);
      else if (key == "adc") cfg.adc = value;
      else bad_line(line_no, "unknown [run] key '" + key + "'");
    } else if (section == "ensemble") {
      EnsembleSpec spec;
      if (key == "iid_uniform") {
        spec.kind = EnsembleSpec::Kind::IidUniform;
        if (value == "auto") spec.seed_from_run = true;
        else spec.seed = to_u64(value, line_no);
      } else if (key == "constant") {
        spec.kind = EnsembleSpec::Kind::Constant;
        spec.value = to_double(value, line_no);
      } else if (key == "sinusoid") {
        const auto toks = split_ws(value);
        if (toks.size() != 2) {
          bad_line(line_no, "sinusoid takes two numbers: amplitude frequency");
        }
        spec.kind = EnsembleSpec::Kind::Sinusoid;
        spec.amplitude = to_double(toks[0], line_no);
        spec.frequency = to_double(toks[1], line_no);
      } else if (key == "adversarial") {
        if (value != "on") bad_line(line_no, "adversarial takes the value 'on'");
        spec.kind = EnsembleSpec::Kind::Adversarial;
      } else {
        bad_line(line_no, "unknown [ensemble] key '" + key + "'");
      }
      cfg.ensemble.push_back(spec);
    } else if (section == "attack") {
      if (key == "target") cfg.target = value;
      else bad_line(line_no, "unknown [attack] key '" + key + "'");
    } else if (section == "sweep") {
      if (key == "param") cfg.sweep_param = value;
      else if (key == "values") cfg.sweep_values = to_doubles(value, line_no);
      else bad_line(line_no, "unknown [sweep] key '" + key + "'");
    } else {  // output
      if (key == "trace") cfg.trace_path = value;
      else if (key == "report") cfg.report_path = value;
      else bad_line(line_no, "unknown [output] key '" + key + "'");
    }
  }

  if (!a_rows.empty() || !b_vec.empty() || !c_vec.empty()) {
    if (a_rows.empty() || b_vec.empty() || c_vec.empty()) {
      throw ConfigError("config: an explicit filter needs all three of a, b, c");
    }
    const Eigen::Index m = static_cast<Eigen::Index>(a_rows.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(a_rows[0].size());
    Eigen::MatrixXd a(m, cols);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (static_cast<Eigen::Index>(a_rows[i].size()) != cols) {
        throw ConfigError("config: matrix a has rows of different lengths");
      }
      for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = a_rows[i][j];
    }
    Eigen::VectorXd b(static_cast<Eigen::Index>(b_vec.size()));
    for (std::size_t i = 0; i < b_vec.size(); ++i) b(static_cast<Eigen::Index>(i)) = b_vec[i];
    Eigen::RowVectorXd c(static_cast<Eigen::Index>(c_vec.size()));
    for (std::size_t i = 0; i < c_vec.size(); ++i) c(static_cast<Eigen::Index>(i)) = c_vec[i];
    try {
      cfg.matrices.emplace(std::move(a), std::move(b), std::move(c));
    } catch (const DomainError& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }

  return cfg;
}

int cmd_certify(const ExperimentConfig& cfg, const fs::path& out_dir) {
  const Models m = resolve_models(cfg);
  const Certificate cert = certify(m.filter, m.quant, m.phi);
  std::cout << cert.to_text();
  if (!cfg.report_path.empty()) {
    ordered_json j;
    j["command"] = "certify";
    j["filter"] = filter_label(cfg);
    j["certificate"] = cert_to_json(cert);
    write_report(resolve_out(out_dir, cfg.report_path), j);
  }
  return cert.applicable ? kExitOk : kExitNotApplicable;
}

int cmd_simulate(const ExperimentConfig& cfg, const fs::path& out_dir) {
  const Models m = resolve_models(cfg);
  if (cfg.horizon < 1) throw ConfigError("config: horizon must be >= 1");
  if (!known_adcs().count(cfg.adc)) {
    throw ConfigError("config: unknown adc '" + cfg.adc + "'");
  }
  const StateSpace f = extract_delay(m.filter);
  const auto adc = make_adc(cfg.adc, f, m.quant);
  const auto ensemble = build_ensemble(cfg, f, m.quant.delta());
  const auto n_steps = static_cast<std::size_t>(cfg.horizon);
  if (cfg.window < 0 || cfg.window > cfg.horizon) {
    throw ConfigError("config: window must lie in [1, horizon]");
  }
  const std::size_t window = cfg.window > 0
                                 ? static_cast<std::size_t>(cfg.window)
                                 : std::max<std::size_t>(1, n_steps / 10);

  const Certificate cert = certify(m.filter, m.quant, m.phi);

  double j_estimate = -1.0;
  std::string worst_source;
  ordered_json members = ordered_json::array();
  std::vector<double> tr_r, tr_u, tr_w, tr_q;  // first member's trace

  for (std::size_t idx = 0; idx < ensemble.size(); ++idx) {
    InputSource& src = *ensemble[idx];
    adc->reset();
    src.reset();
    std::vector<double> r(n_steps), u(n_steps), w(n_steps);
    double max_u = 0.0;
    for (std::size_t n = 0; n < n_steps; ++n) {
      r[n] = src.next();
      if (!(std::abs(r[n]) <= 1.0)) {
        throw ContractViolationError("ensemble member " + src.name() +
                                     " produced an input outside [-1,1]");
      }
      u[n] = adc->step(r[n]);
      if (!is_level(u[n], m.quant)) {
        throw ContractViolationError("ADC " + std::string(adc->name()) +
                                     " emitted a value outside U_M");
      }
      src.observe(r[n], u[n]);
      w[n] = r[n] - u[n];
      max_u = std::max(max_u, std::abs(u[n]));
    }
    const std::vector<double> q = simulate(f, w);
    MemberPerformance member;
    member.source = src.name();
    member.stats = awai(q, m.phi, window);
    member.max_abs_q = 0.0;
    for (double v : q) member.max_abs_q = std::max(member.max_abs_q, std::abs(v));
    member.max_abs_u = max_u;
    if (member.stats.suffix_mean > j_estimate) {
      j_estimate = member.stats.suffix_mean;
      worst_source = member.source;
    }
    members.push_back(stats_to_json(member));
    if (idx == 0) {
      tr_r = std::move(r);
      tr_u = std::move(u);
      tr_w = std::move(w);
      tr_q = q;
    }
  }

  std::cout << "simulate: adc=" << cfg.adc << " filter=" << filter_label(cfg)
            << " delta=" << fmt(m.quant.delta()) << " N=" << n_steps << '\n';
  std::cout << "J estimate (suffix mean of phi) = " << fmt(j_estimate)
            << "  worst source: " << worst_source << '\n';
  if (cert.applicable) {
    std::cout << "certificate applicable, optimal value = "
              << fmt(cert.optimal_value) << '\n';
  } else {
    std::cout << "certificate not applicable\n";
  }

  if (!cfg.trace_path.empty()) {
    const fs::path p = resolve_out(out_dir, cfg.trace_path);
    write_trace_csv(p, tr_r, tr_u, tr_w, tr_q, m.quant);
    std::cout << "trace -> " << p.string() << '\n';
  }
  if (!cfg.report_path.empty()) {
    ordered_json j;
    j["command"] = "simulate";
    j["filter"] = filter_label(cfg);
    j["adc"] = cfg.adc;
    j["delta"] = m.quant.delta();
    j["m"] = m.quant.bounded() ? ordered_json(m.quant.m()) : ordered_json("inf");
    j["phi"] = m.phi.name();
    j["horizon"] = cfg.horizon;
    j["seed"] = cfg.seed;
    j["j_estimate"] = j_estimate;
    j["worst_source"] = worst_source;
    j["trace_source"] = members.empty() ? "" : members[0]["source"];
    j["members"] = members;
    j["certificate"] = cert_to_json(cert);
    const fs::path p = resolve_out(out_dir, cfg.report_path);
    write_report(p, j);
    std::cout << "report -> " << p.string() << '\n';
  }
  return kExitOk;
}

int cmd_attack(const ExperimentConfig& cfg, const fs::path& out_dir) {
  const Models m = resolve_models(cfg);
  if (cfg.horizon < 1) throw ConfigError("config: horizon must be >= 1");
  if (!known_adcs().count(cfg.target)) {
    throw ConfigError("config: unknown target '" + cfg.target +
                      "' (known: greedy, dsm-loop, classical-dsm1, memoryless)");
  }
  const StateSpace f = extract_delay(m.filter);
  const auto adc = make_adc(cfg.target, f, m.quant);
  const AttackResult res =
      attack(*adc, f, m.quant.delta(), static_cast<std::size_t>(cfg.horizon));

  std::cout << "attack: target=" << cfg.target << " filter=" << filter_label(cfg)
            << " delta=" << fmt(m.quant.delta()) << " N=" << cfg.horizon << '\n';
  std::cout << "min |q[n>=1]| = " << fmt(res.min_abs_q)
            << "  bound |CB| delta/2 = " << fmt(res.bound) << '\n';
  std::cout << "verdict = " << (res.bound_satisfied ? "PASS" : "FAIL") << '\n';

  if (!cfg.trace_path.empty()) {
    std::vector<double> w(res.r.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = res.r[i] - res.u[i];
    // row n carries q[n], the filtered error when r[n] was chosen; the
    // final sample q[N] lives in the report
    std::vector<double> q_rows(res.q.begin(), res.q.end() - 1);
    const fs::path p = resolve_out(out_dir, cfg.trace_path);
    write_trace_csv(p, res.r, res.u, w, q_rows, m.quant);
    std::cout << "trace -> " << p.string() << '\n';
  }
  if (!cfg.report_path.empty()) {
    ordered_json j;
    j["command"] = "attack";
    j["filter"] = filter_label(cfg);
    j["target"] = cfg.target;
    j["delta"] = m.quant.delta();
    j["horizon"] = cfg.horizon;
    j["bound"] = res.bound;
    j["min_abs_q"] = num_or_str(res.min_abs_q);
    j["final_q"] = res.q.back();
    j["verdict"] = res.bound_satisfied ? "PASS" : "FAIL";
    const fs::path p = resolve_out(out_dir, cfg.report_path);
    write_report(p, j);
    std::cout << "report -> " << p.string() << '\n';
  }
  return res.bound_satisfied ? kExitOk : kExitError;
}

int cmd_sweep(const ExperimentConfig& cfg, const fs::path& out_dir) {
  if (cfg.sweep_param != "delta" && cfg.sweep_param != "m") {
    throw ConfigError("config: [sweep] param must be 'delta' or 'm'");
  }
  if (cfg.sweep_values.empty()) {
    throw ConfigError("config: [sweep] values must be a nonempty grid");
  }
  if (cfg.horizon < 1) throw ConfigError("config: horizon must be >= 1");
  const PhiFunction phi = make_phi(cfg.phi_kind);
  const StateSpace filter = cfg.resolve_filter();
  const StateSpace f = extract_delay(filter);

  // Fixed coordinate checks up front so a bad grid fails before any run.
  if (cfg.sweep_param == "delta") {
    if (!cfg.m_unbounded && cfg.m < 1) {
      throw ConfigError("config: a delta sweep needs [quantizer] m");
    }
    for (double v : cfg.sweep_values) {
      if (!(v > 0.0)) throw ConfigError("config: sweep deltas must be positive");
    }
  } else {
    if (!(cfg.delta > 0.0)) {
      throw ConfigError("config: an m sweep needs [quantizer] delta");
    }
    for (double v : cfg.sweep_values) {
      if (!(v >= 1.0) || std::abs(v - std::llround(v)) > 1e-9) {
        throw ConfigError("config: sweep m values must be integers >= 1");
      }
    }
  }

  std::ostringstream csv;
  csv << "param,value,beta,applicable,optimal_value,empirical_j\n";
  for (double v : cfg.sweep_values) {
    const UniformQuantizer quant =
        cfg.sweep_param == "delta"
            ? (cfg.m_unbounded ? UniformQuantizer::unbounded(v)
                               : UniformQuantizer(v, cfg.m))
            : UniformQuantizer(cfg.delta, std::llround(v));
    const Certificate cert = certify(filter, quant, phi);

    double empirical = std::numeric_limits<double>::quiet_NaN();
    try {
      GreedyAdc greedy(f, quant);
      std::vector<std::unique_ptr<InputSource>> ens;
      ens.push_back(std::make_unique<AdversarialSource>(f, quant.delta()));
      empirical = measure_performance(greedy, f, phi, ens,
                                      static_cast<std::size_t>(cfg.horizon))
                      .j_estimate;
    } catch (const Error&) {
      // a blow-up at an inapplicable grid point is expected; leave NaN
    }

    csv << cfg.sweep_param << ',' << fmt(v) << ',' << fmt(cert.beta) << ','
        << (cert.applicable ? "true" : "false") << ','
        << fmt(cert.optimal_value) << ',' << fmt(empirical) << '\n';
    std::cout << cfg.sweep_param << " = " << fmt(v)
              << ": beta = " << fmt(cert.beta)
              << ", applicable = " << (cert.applicable ? "true" : "false")
              << ", optimal = " << fmt(cert.optimal_value)
              << ", empirical J = " << fmt(empirical) << '\n';
  }

  if (!cfg.trace_path.empty()) {
    const fs::path p = resolve_out(out_dir, cfg.trace_path);
    std::ofstream out = open_out(p);
    out << csv.str();
    if (!out) throw Error("failed writing " + p.string());
    std::cout << "sweep csv -> " << p.string() << '\n';
  }
  return kExitOk;
}

int run_main(int argc, const char* const* argv) {
  CLI::App app{"delta-sigma ADC simulation, optimality certificates, and worst-case attacks"};
  app.require_subcommand(1);

  struct Opts {
    std::string config;
    std::string out = ".";
    std::uint64_t seed = 0;
    long long horizon = 0;
    std::string target;
  } opts;

  const auto add_common = [&opts](CLI::App* sub) {
    sub->add_option("--config", opts.config, "experiment config file")->required();
    sub->add_option("--out", opts.out, "output directory for traces and reports");
    sub->add_option("--seed", opts.seed, "override the [run] seed");
    sub->add_option("--horizon", opts.horizon, "override the [run] horizon");
    sub->add_option("--target", opts.target, "override the [attack] target");
  };

  CLI::App* c_certify =
      app.add_subcommand("certify", "evaluate the optimality certificate");
  CLI::App* c_simulate =
      app.add_subcommand("simulate", "run an ADC over the input ensemble");
  CLI::App* c_attack =
      app.add_subcommand("attack", "drive an ADC with the worst-case input");
  CLI::App* c_sweep =
      app.add_subcommand("sweep", "certify and measure across a parameter grid");
  for (CLI::App* sub : {c_certify, c_simulate, c_attack, c_sweep}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();

  try {
    ExperimentConfig cfg = load_config(opts.config);
    if (sub->count("--seed") > 0) cfg.seed = opts.seed;
    if (sub->count("--horizon") > 0) {
      if (opts.horizon < 1) throw ConfigError("--horizon must be >= 1");
      cfg.horizon = opts.horizon;
    }
    if (sub->count("--target") > 0) cfg.target = opts.target;

    const fs::path out_dir = opts.out.empty() ? fs::path(".") : fs::path(opts.out);
    fs::create_directories(out_dir);

    if (sub == c_certify) return cmd_certify(cfg, out_dir);
    if (sub == c_simulate) return cmd_simulate(cfg, out_dir);
    if (sub == c_attack) return cmd_attack(cfg, out_dir);
    return cmd_sweep(cfg, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace dsmkit::cli
