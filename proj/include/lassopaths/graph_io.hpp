#pragma once

#include <iosfwd>
#include <string>

#include "lassopaths/graph.hpp"

namespace lassopaths {

/// Text format: one `u v w` edge per line, 1-based ids, `#` comments.
Graph read_graph_text(std::istream& in);
Graph read_graph_text_file(const std::string& path);
void write_graph_text(const Graph& g, std::ostream& out);
void write_graph_text_file(const Graph& g, const std::string& path);

/// JSON alternative: {"n": int, "edges": [[u, v, w], ...]}, 1-based ids.
Graph read_graph_json(std::istream& in);
Graph read_graph_json_file(const std::string& path);

/// Dispatches on the .json extension, text otherwise.
Graph read_graph_file(const std::string& path);

}  // namespace lassopaths
