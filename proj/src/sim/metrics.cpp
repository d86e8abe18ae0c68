#include "agmec/sim/metrics.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace agmec::sim {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += format_double(v[i]);
  }
  return s;
}

std::vector<double> split_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) out.push_back(std::stod(item));
  return out;
}

}  // namespace

std::string MetricsWriter::header(std::size_t num_ues) {
  std::string h = "t,E_t_J,D_t_bits,avgE_J,avgD_bits,uav_x_m,uav_y_m";
  for (std::size_t i = 0; i <= num_ues; ++i) h += ",a" + std::to_string(i);
  for (std::size_t i = 0; i <= num_ues; ++i) h += ",explored" + std::to_string(i);
  h += ",t_decide_s,t_learn_s,dict_e_sizes,dict_d_sizes";
  return h;
}

MetricsWriter::MetricsWriter(std::ostream& out, std::size_t num_ues) : out_(out), num_ues_(num_ues) {
  out_ << "# schema agmec-metrics v1: a0 is the UAV direction (0=E, counter-clockwise in 45 deg steps), "
          "a1..aM are offloading targets (0=UAV 1=BS 2=local); dict_*_sizes hold ';'-joined per-agent "
          "dictionary sizes for kernel runs and last training losses for dnn runs\n";
  out_ << header(num_ues) << '\n';
}

void MetricsWriter::write(const SlotRecord& r) {
  if (r.actions.size() != num_ues_ + 1 || r.explored.size() != num_ues_ + 1)
    throw std::invalid_argument("metrics row has the wrong number of agents");
  out_ << r.t << ',' << format_double(r.energy_j) << ',' << r.backlog_bits << ','
       << format_double(r.avg_energy_j) << ',' << format_double(r.avg_backlog_bits) << ','
       << format_double(r.uav_x) << ',' << format_double(r.uav_y);
  for (int a : r.actions) out_ << ',' << a;
  for (int e : r.explored) out_ << ',' << e;
  out_ << ',' << format_double(r.t_decide_s) << ',' << format_double(r.t_learn_s) << ',' << join(r.diag_e)
       << ',' << join(r.diag_d) << '\n';
}

std::vector<SlotRecord> read_metrics(std::istream& in, std::size_t num_ues) {
  std::vector<SlotRecord> rows;
  std::string line;
  bool seen_header = false;
  const std::size_t agents = num_ues + 1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      if (line != MetricsWriter::header(num_ues)) throw std::runtime_error("unexpected metrics header");
      seen_header = true;
      continue;
    }
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
    if (line.back() == ',') cols.emplace_back();
    if (cols.size() != 7 + 2 * agents + 4) throw std::runtime_error("bad metrics row: " + line);
    SlotRecord r;
    std::size_t k = 0;
    r.t = std::stoll(cols[k++]);
    r.energy_j = std::stod(cols[k++]);
    r.backlog_bits = std::stoll(cols[k++]);
    r.avg_energy_j = std::stod(cols[k++]);
    r.avg_backlog_bits = std::stod(cols[k++]);
    r.uav_x = std::stod(cols[k++]);
    r.uav_y = std::stod(cols[k++]);
    for (std::size_t i = 0; i < agents; ++i) r.actions.push_back(std::stoi(cols[k++]));
    for (std::size_t i = 0; i < agents; ++i) r.explored.push_back(std::stoi(cols[k++]));
    r.t_decide_s = std::stod(cols[k++]);
    r.t_learn_s = std::stod(cols[k++]);
    r.diag_e = split_doubles(cols[k++]);
    r.diag_d = split_doubles(cols[k++]);
    rows.push_back(std::move(r));
  }
  if (!seen_header) throw std::runtime_error("metrics header missing");
  return rows;
}

}  // namespace agmec::sim
