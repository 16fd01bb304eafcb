// Graphviz rendering: spans as two-arm element diagrams and cells as
// layered interval diagrams.
#include "spancalc/dot_export.hpp"

#include <sstream>

#include "cell_detail.hpp"

namespace spancalc {
namespace {

void emit_cluster(std::ostringstream& os, const char* name, char prefix,
                  int size) {
  os << "  subgraph cluster_" << name << " {\n";
  os << "    label=\"" << name << "\";\n";
  for (int i = 0; i < size; ++i)
    os << "    " << prefix << i << " [label=\"" << i << "\"];\n";
  os << "  }\n";
}

}  // namespace

std::string dot_span(const Span1& s) {
  std::ostringstream os;
  os << "digraph span {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=circle, fontsize=10];\n";
  emit_cluster(os, "left", 'L', s.left_foot.size);
  emit_cluster(os, "apex", 'U', s.apex.size);
  emit_cluster(os, "right", 'R', s.right_foot.size);
  for (int u = 0; u < s.apex.size; ++u)
    os << "  U" << u << " -> L" << s.lmap.values[static_cast<size_t>(u)]
       << ";\n";
  for (int u = 0; u < s.apex.size; ++u)
    os << "  U" << u << " -> R" << s.rmap.values[static_cast<size_t>(u)]
       << ";\n";
  os << "}\n";
  return os.str();
}

std::string dot_cell(const SpanCell& f) {
  std::ostringstream os;
  os << "digraph cell {\n";
  os << "  node [shape=box, fontsize=10];\n";
  for (int lo = 0; lo <= f.n; ++lo)
    for (int hi = lo; hi <= f.n; ++hi) {
      int t = detail::iv_index(f.n, lo, hi);
      os << "  iv_" << lo << "_" << hi << " [label=\"(" << lo << "," << hi
         << ") size " << f.sets[static_cast<size_t>(t)].size << "\"];\n";
    }
  for (int len = 0; len <= f.n; ++len) {
    os << "  { rank=same;";
    for (int lo = 0; lo + len <= f.n; ++lo)
      os << " iv_" << lo << "_" << (lo + len) << ";";
    os << " }\n";
  }
  for (int lo = 0; lo <= f.n; ++lo)
    for (int hi = lo + 1; hi <= f.n; ++hi) {
      os << "  iv_" << lo << "_" << hi << " -> iv_" << lo << "_" << (hi - 1)
         << " [label=\"r\"];\n";
      os << "  iv_" << lo << "_" << hi << " -> iv_" << (lo + 1) << "_" << hi
         << " [label=\"l\"];\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace spancalc
