#include "lhg/edge_list.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lhg {

namespace {

bool blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void parse_fail(const std::string& path, size_t line_no,
                             const std::string& what) {
  throw IoError(path + ":" + std::to_string(line_no) + ": " + what);
}

}  // namespace

std::vector<WeightedEdge> load_edge_list(const std::string& path,
                                         bool undirected, bool weighted) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list: " + path);

  std::vector<WeightedEdge> edges;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;

    std::istringstream fields(line);
    uint64_t u = 0;
    uint64_t v = 0;
    if (!(fields >> u >> v)) parse_fail(path, line_no, "expected `u v [w]`");

    double w = 1.0;
    std::string tok;
    if (fields >> tok && tok[0] != '#') {
      if (weighted) {
        size_t used = 0;
        try {
          w = std::stod(tok, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != tok.size()) parse_fail(path, line_no, "bad weight: " + tok);
        std::string extra;
        if (fields >> extra && extra[0] != '#')
          parse_fail(path, line_no, "trailing field: " + extra);
      }
    }

    edges.push_back({u, v, w});
    if (undirected && u != v) edges.push_back({v, u, w});
  }
  if (in.bad()) throw IoError("read failed: " + path);
  return edges;
}

void write_edge_list(const std::string& path,
                     const std::vector<WeightedEdge>& edges) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  char buf[96];
  for (const WeightedEdge& e : edges) {
    int len = std::snprintf(buf, sizeof buf, "%llu %llu %.17g\n",
                            static_cast<unsigned long long>(e.u),
                            static_cast<unsigned long long>(e.v), e.w);
    out.write(buf, len);
  }
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace lhg
