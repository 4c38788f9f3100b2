#include "gvrp/instance_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "gvrp/errors.hpp"

namespace gvrp {
namespace {

struct Token {
  std::string_view text;
  int column = 1;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

double to_double(const Token& t, int line) {
  double v = 0.0;
  const char* end = t.text.data() + t.text.size();
  auto [ptr, ec] = std::from_chars(t.text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ParseError(line, t.column, "expected a number, got '" + std::string(t.text) + "'");
  }
  return v;
}

long to_int(const Token& t, int line) {
  long v = 0;
  const char* end = t.text.data() + t.text.size();
  auto [ptr, ec] = std::from_chars(t.text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, t.column, "expected an integer, got '" + std::string(t.text) + "'");
  }
  return v;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct HeaderValue {
  Token token;
  int line = 0;
};

struct NodeLine {
  std::string kind;
  double x = 0.0;
  double y = 0.0;
  std::optional<double> service;
  int line = 0;
};

}  // namespace

Instance parse_instance(std::string_view text) {
  std::map<std::string, HeaderValue, std::less<>> header;
  std::map<long, NodeLine> nodes;
  bool in_nodes = false;
  int line_no = 0;
  int last_line = 1;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    last_line = line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (static_cast<unsigned char>(c) < 0x20 && c != '\t' && c != '\r') {
        throw ParseError(line_no, static_cast<int>(i) + 1, "control character");
      }
    }
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;

    if (!in_nodes) {
      std::string_view first = tokens[0].text;
      if (first == "NODES" || first == "NODES:") {
        if (tokens.size() > 1) throw ParseError(line_no, tokens[1].column, "unexpected text after NODES");
        in_nodes = true;
        continue;
      }
      // "KEY: value" or "KEY:value".
      std::string key;
      Token value;
      if (const auto colon = first.find(':'); colon != std::string_view::npos) {
        key = std::string(first.substr(0, colon));
        if (colon + 1 < first.size()) {
          value = {first.substr(colon + 1), tokens[0].column + static_cast<int>(colon) + 1};
          if (tokens.size() > 1) throw ParseError(line_no, tokens[1].column, "unexpected text");
        } else {
          if (tokens.size() != 2) {
            throw ParseError(line_no, tokens[0].column + static_cast<int>(first.size()),
                             "expected exactly one value after '" + key + ":'");
          }
          value = tokens[1];
        }
      } else {
        throw ParseError(line_no, tokens[0].column, "expected 'KEY: value' or NODES");
      }
      static const char* known[] = {"N", "S", "M", "SPEED", "TMAX", "EF", "CR", "TAU_S", "ETA", "TAU_C"};
      bool ok = false;
      for (const char* k : known) ok = ok || key == k;
      if (!ok) throw ParseError(line_no, tokens[0].column, "unknown header key '" + key + "'");
      if (header.count(key)) throw ParseError(line_no, tokens[0].column, "duplicate header key '" + key + "'");
      header[key] = {value, line_no};
      continue;
    }

    if (tokens.size() < 4 || tokens.size() > 5) {
      throw ParseError(line_no, tokens[0].column, "expected 'id KIND x y [service]'");
    }
    const long id = to_int(tokens[0], line_no);
    NodeLine node;
    node.kind = std::string(tokens[1].text);
    if (node.kind != "DEPOT" && node.kind != "CUST" && node.kind != "AFS") {
      throw ParseError(line_no, tokens[1].column, "node kind must be DEPOT, CUST or AFS");
    }
    node.x = to_double(tokens[2], line_no);
    node.y = to_double(tokens[3], line_no);
    if (tokens.size() == 5) {
      if (node.kind != "CUST") throw ParseError(line_no, tokens[4].column, "only customers take a service time");
      node.service = to_double(tokens[4], line_no);
      if (*node.service < 0.0) throw ParseError(line_no, tokens[4].column, "negative service time");
    }
    node.line = line_no;
    if (nodes.count(id)) {
      throw ParseError(line_no, tokens[0].column, "duplicate node id " + std::to_string(id));
    }
    nodes[id] = node;
  }

  auto need = [&](const char* key) -> const HeaderValue& {
    auto it = header.find(key);
    if (it == header.end()) throw ParseError(last_line, 1, std::string("missing header key ") + key);
    return it->second;
  };
  auto positive_int = [&](const char* key, long min) {
    const auto& h = need(key);
    const long v = to_int(h.token, h.line);
    if (v < min) {
      throw ParseError(h.line, h.token.column, std::string(key) + " must be at least " + std::to_string(min));
    }
    if (v > 1000000) throw ParseError(h.line, h.token.column, std::string(key) + " is too large");
    return static_cast<int>(v);
  };
  auto positive_real = [&](const char* key, bool allow_zero) {
    const auto& h = need(key);
    const double v = to_double(h.token, h.line);
    if (v < 0.0 || (!allow_zero && v == 0.0)) {
      throw ParseError(h.line, h.token.column, std::string(key) + (allow_zero ? " must be nonnegative" : " must be positive"));
    }
    return v;
  };

  const int n = positive_int("N", 1);
  const int s = positive_int("S", 0);
  FleetParams p;
  p.fleet_limit = positive_int("M", 1);
  p.speed = positive_real("SPEED", false);
  p.duration_limit = positive_real("TMAX", false);
  p.energy_full = positive_real("EF", false);
  p.consumption = positive_real("CR", false);
  p.refuel_time = positive_real("TAU_S", true);
  p.station_capacity = positive_int("ETA", 1);
  std::optional<double> default_service;
  if (header.count("TAU_C")) default_service = positive_real("TAU_C", true);

  if (!in_nodes) throw ParseError(last_line, 1, "missing NODES section");
  const long total = static_cast<long>(n) + s + 1;
  if (static_cast<long>(nodes.size()) != total) {
    throw ParseError(last_line, 1, "NODES lists " + std::to_string(nodes.size()) + " nodes, header implies " +
                                       std::to_string(total));
  }
  std::vector<Point> coords(static_cast<std::size_t>(total));
  std::vector<double> service(static_cast<std::size_t>(n), 0.0);
  for (const auto& [id, node] : nodes) {
    if (id < 0 || id >= total) {
      throw ParseError(node.line, 1, "node id " + std::to_string(id) + " outside 0.." + std::to_string(total - 1));
    }
    const char* expect = id == 0 ? "DEPOT" : (id <= n ? "CUST" : "AFS");
    if (id == 0 && node.kind != "DEPOT") throw ParseError(node.line, 1, "missing depot: node 0 must be DEPOT");
    if (node.kind != expect) {
      throw ParseError(node.line, 1, "node " + std::to_string(id) + " must be " + expect);
    }
    coords[static_cast<std::size_t>(id)] = {node.x, node.y};
    if (node.kind == "CUST") {
      if (node.service) {
        service[static_cast<std::size_t>(id - 1)] = *node.service;
      } else if (default_service) {
        service[static_cast<std::size_t>(id - 1)] = *default_service;
      } else {
        throw ParseError(node.line, 1, "customer " + std::to_string(id) + " has no service time and TAU_C is absent");
      }
    }
  }
  if (!nodes.count(0)) throw ParseError(last_line, 1, "missing depot (node 0)");
  for (long id = 1; id < total; ++id) {
    if (!nodes.count(id)) throw ParseError(last_line, 1, "missing node " + std::to_string(id));
  }
  return Instance::from_coordinates(n, s, std::move(coords), std::move(service), p);
}

Instance read_instance_file(const std::filesystem::path& path) {
  return parse_instance(read_text_file(path));
}

std::string write_instance(const Instance& inst) {
  if (!inst.has_coordinates()) throw std::invalid_argument("write_instance needs coordinates");
  const auto& p = inst.params();
  std::ostringstream out;
  out << "N: " << inst.customer_count() << '\n';
  out << "S: " << inst.station_count() << '\n';
  out << "M: " << p.fleet_limit << '\n';
  out << "SPEED: " << format_number(p.speed) << '\n';
  out << "TMAX: " << format_number(p.duration_limit) << '\n';
  out << "EF: " << format_number(p.energy_full) << '\n';
  out << "CR: " << format_number(p.consumption) << '\n';
  out << "TAU_S: " << format_number(p.refuel_time) << '\n';
  out << "ETA: " << p.station_capacity << '\n';
  const auto service = inst.customer_service_times();
  bool uniform = true;
  for (double v : service) uniform = uniform && v == service.front();
  if (uniform && !service.empty()) out << "TAU_C: " << format_number(service.front()) << '\n';
  out << "NODES\n";
  for (NodeId v = 0; v < inst.node_count(); ++v) {
    const Point c = inst.coordinate(v);
    out << v << ' ' << (v == 0 ? "DEPOT" : inst.is_customer(v) ? "CUST" : "AFS") << ' '
        << format_number(c.x) << ' ' << format_number(c.y);
    if (inst.is_customer(v) && !uniform) out << ' ' << format_number(inst.service_time(v));
    out << '\n';
  }
  return out.str();
}

void write_instance_file(const Instance& inst, const std::filesystem::path& path) {
  write_text_file(path, write_instance(inst));
}

Solution parse_solution(std::string_view text, const Instance& inst) {
  Solution sol;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    Route r;
    r.nodes.clear();
    for (const auto& t : tokens) {
      const long v = to_int(t, line_no);
      if (v < 0 || v >= inst.node_count()) {
        throw ParseError(line_no, t.column, "node id " + std::to_string(v) + " out of range");
      }
      r.nodes.push_back(static_cast<NodeId>(v));
    }
    sol.routes.push_back(std::move(r));
  }
  return sol;
}

Solution read_solution_file(const std::filesystem::path& path, const Instance& inst) {
  return parse_solution(read_text_file(path), inst);
}

std::string write_solution(const Solution& sol) {
  std::string out;
  for (const Route& r : sol.routes) {
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(r.nodes[i]);
    }
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace gvrp
