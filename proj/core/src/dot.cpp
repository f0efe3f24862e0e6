#include "qnet/dot.hpp"

#include <map>
#include <sstream>

namespace qnet {

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string to_dot(const ReachResult& reach) {
    std::map<FreeElem, std::size_t> ids;
    std::ostringstream os;
    os << "digraph reach {\n";
    for (const auto& m : reach.markings) {
        const std::size_t id = ids.size();
        ids.emplace(m, id);
        os << "  m" << id << " [label=" << quoted(to_display(m)) << "];\n";
    }
    for (const auto& e : reach.edges) {
        os << "  m" << ids.at(e.from) << " -> m" << ids.at(e.to) << " [label=" << quoted(to_display(layer_fired(e.layer)))
           << "];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace qnet
