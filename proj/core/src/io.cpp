#include "certreg/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "certreg/bounds.hpp"
#include "certreg/error.hpp"

namespace certreg {

std::string format_real(double v) {
  if (!std::isfinite(v)) throw ConfigError("cannot serialize a non-finite number");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

std::string real_array(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_real(v[i]);
  }
  return out + "]";
}

}  // namespace

std::string certificate_json(const Certificate& cert) {
  std::ostringstream o;
  o << "{\n";
  o << "  \"mode\": " << quoted(cert.mode) << ",\n";
  o << "  \"c_best\": " << format_real(cert.c_best) << ",\n";
  o << "  \"ev_best\": " << format_real(cert.ev_best) << ",\n";
  o << "  \"certified_epsilon\": " << format_real(cert.certified_epsilon) << ",\n";
  o << "  \"epsilon_target\": " << format_real(cert.epsilon_target) << ",\n";
  o << "  \"c_range\": [" << format_real(cert.c_min) << ", " << format_real(cert.c_max) << "],\n";
  o << "  \"solved\": [";
  for (std::size_t i = 0; i < cert.solved.size(); ++i) {
    const auto& s = cert.solved[i];
    o << (i ? ",\n" : "\n") << "    {\"c\": " << format_real(s.c) << ", \"lb\": " << format_real(s.lb)
      << ", \"ub\": " << format_real(s.ub) << ", \"iterations\": " << s.iterations << "}";
  }
  o << (cert.solved.empty() ? "],\n" : "\n  ],\n");
  o << "  \"lower_bound_path\": {\n";
  o << "    \"breakpoints\": " << real_array(cert.lower_bound_path.breakpoints) << ",\n";
  o << "    \"values\": " << real_array(cert.lower_bound_path.values) << "\n";
  o << "  },\n";
  const auto& sv = cert.solver;
  o << "  \"solver\": {\n";
  o << "    \"loss\": " << quoted(sv.loss) << ",\n";
  o << "    \"huber_width\": " << format_real(sv.huber_width) << ",\n";
  o << "    \"solution_mode\": " << quoted(sv.solution_mode) << ",\n";
  o << "    \"gap_target_fraction\": " << format_real(sv.gap_target_fraction) << ",\n";
  o << "    \"exact_tolerance\": " << format_real(sv.exact_tolerance) << ",\n";
  o << "    \"max_iterations\": " << sv.max_iterations << ",\n";
  o << "    \"total_iterations\": " << sv.total_iterations << ",\n";
  o << "    \"folds\": " << sv.folds << ",\n";
  o << "    \"validation_size\": " << sv.validation_size << ",\n";
  o << "    \"fallback_steps\": " << sv.fallback_steps << ",\n";
  o << "    \"min_steps\": " << sv.min_steps << "\n";
  o << "  },\n";
  o << "  \"seed\": " << cert.seed << "\n";
  o << "}\n";
  return o.str();
}

void write_certificate_json(std::ostream& out, const Certificate& cert) { out << certificate_json(cert); }

Certificate parse_certificate_json(const std::string& text) {
  using nlohmann::json;
  try {
    const json j = json::parse(text);
    Certificate c;
    c.mode = j.at("mode").get<std::string>();
    c.c_best = j.at("c_best").get<double>();
    c.ev_best = j.at("ev_best").get<double>();
    c.certified_epsilon = j.at("certified_epsilon").get<double>();
    c.epsilon_target = j.at("epsilon_target").get<double>();
    const auto& range = j.at("c_range");
    if (!range.is_array() || range.size() != 2) throw DataError("c_range must have two entries");
    c.c_min = range[0].get<double>();
    c.c_max = range[1].get<double>();
    for (const auto& s : j.at("solved")) {
      c.solved.push_back({s.at("c").get<double>(), s.at("lb").get<double>(), s.at("ub").get<double>(),
                          s.at("iterations").get<int>()});
    }
    const auto& path = j.at("lower_bound_path");
    c.lower_bound_path.breakpoints = path.at("breakpoints").get<std::vector<double>>();
    c.lower_bound_path.values = path.at("values").get<std::vector<double>>();
    const auto& sv = j.at("solver");
    c.solver.loss = sv.at("loss").get<std::string>();
    c.solver.huber_width = sv.at("huber_width").get<double>();
    c.solver.solution_mode = sv.at("solution_mode").get<std::string>();
    c.solver.gap_target_fraction = sv.at("gap_target_fraction").get<double>();
    c.solver.exact_tolerance = sv.at("exact_tolerance").get<double>();
    c.solver.max_iterations = sv.at("max_iterations").get<int>();
    c.solver.total_iterations = sv.at("total_iterations").get<long long>();
    c.solver.folds = sv.at("folds").get<std::size_t>();
    c.solver.validation_size = sv.at("validation_size").get<std::size_t>();
    c.solver.fallback_steps = sv.at("fallback_steps").get<std::size_t>();
    c.solver.min_steps = sv.at("min_steps").get<std::size_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
  } catch (const json::exception& e) {
    throw DataError(std::string("certificate JSON: ") + e.what());
  }
}

void write_staircase_csv(std::ostream& out, const StaircaseBound& s) {
  out << "C_breakpoint,value_left_of_breakpoint,value_right_of_breakpoint\n";
  const auto& bp = s.breakpoints();
  for (std::size_t j = 0; j < bp.size(); ++j) {
    out << format_real(bp[j]) << ',' << format_real(s.value_of(s.segment_counts()[j])) << ','
        << format_real(s.value_of(s.segment_counts()[j + 1])) << '\n';
  }
}

void write_point_bounds_csv(std::ostream& out, const Certificate& cert) {
  out << "C,lb,ub\n";
  for (const auto& s : cert.solved)
    out << format_real(s.c) << ',' << format_real(s.lb) << ',' << format_real(s.ub) << '\n';
}

void write_epsilon_curve_csv(std::ostream& out, std::span<const EpsilonCurvePoint> curve) {
  out << "T,grid_epsilon,bound_guided_epsilon\n";
  for (const auto& p : curve)
    out << p.t << ',' << format_real(p.grid_epsilon) << ',' << format_real(p.bound_guided_epsilon) << '\n';
}

void write_path_csv(std::ostream& out, const PathResult& path, const Problem& problem) {
  out << "C_start,C_end,lb,ub,validation_error\n";
  for (std::size_t t = 0; t < path.trials.size(); ++t) {
    const auto& trial = path.trials[t];
    std::size_t errors = 0;
    for (std::size_t k = 0; k < trial.folds.size(); ++k)
      errors += validation_errors(trial.folds[k].weights, problem.folds()[k].validation);
    const double ev = static_cast<double>(errors) / static_cast<double>(problem.validation_total());
    out << format_real(path.breakpoints[t]) << ',' << format_real(path.breakpoints[t + 1]) << ','
        << format_real(trial.bounds.lb()) << ',' << format_real(trial.bounds.ub()) << ','
        << format_real(ev) << '\n';
  }
}

std::vector<double> read_c_list(std::istream& in) {
  std::vector<double> cs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    for (char& ch : line) {
      if (ch == ',') ch = ' ';
    }
    std::istringstream fields(line);
    std::string tok;
    while (fields >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || !(v > 0.0) || !std::isfinite(v))
        throw DataError("bad C value '" + tok + "'", lineno);
      cs.push_back(v);
    }
  }
  if (cs.empty()) throw DataError("C list is empty");
  return cs;
}

std::vector<double> load_c_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open file");
  try {
    return read_c_list(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

}  // namespace certreg
