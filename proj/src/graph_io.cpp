#include "lassopaths/graph_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace lassopaths {

Graph read_graph_text(std::istream& in) {
  std::vector<std::array<double, 3>> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double u, v, w;
    if (!(ls >> u)) continue;  // blank or comment-only line
    if (!(ls >> v >> w))
      throw IoError("graph line " + std::to_string(lineno) + ": expected `u v w`");
    std::string rest;
    if (ls >> rest)
      throw IoError("graph line " + std::to_string(lineno) + ": trailing tokens");
    edges.push_back({u, v, w});
  }
  if (edges.empty()) throw IoError("graph file has no edges");
  return build_graph_1based(edges);
}

Graph read_graph_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file: " + path);
  return read_graph_text(in);
}

void write_graph_text(const Graph& g, std::ostream& out) {
  out << "# " << g.vertex_count() << " vertices, " << g.edge_count() << " edges\n";
  out << std::setprecision(17);
  for (const Edge& e : g.edges())
    out << e.tail + 1 << " " << e.head + 1 << " " << e.weight << "\n";
}

void write_graph_text_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write graph file: " + path);
  write_graph_text(g, out);
}

Graph read_graph_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("bad graph json: ") + e.what());
  }
  if (!doc.contains("n") || !doc.contains("edges"))
    throw IoError("graph json needs `n` and `edges`");
  const int n = doc["n"].get<int>();
  std::vector<EdgeSpec> edges;
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 3) throw IoError("each edge must be [u, v, w]");
    edges.push_back({e[0].get<int>() - 1, e[1].get<int>() - 1, e[2].get<double>()});
  }
  return Graph::build(n, edges);
}

Graph read_graph_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file: " + path);
  return read_graph_json(in);
}

Graph read_graph_file(const std::string& path) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
    return read_graph_json_file(path);
  return read_graph_text_file(path);
}

}  // namespace lassopaths
