#ifndef INFECT_EDGE_LIST_HPP
#define INFECT_EDGE_LIST_HPP

#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <vector>

#include "error.hpp"
#include "graph.hpp"

namespace infect {

// Text format: the first non-comment line holds N, every later non-comment
// line is `src dst weight`. `#` starts a comment running to end of line.

namespace detail {

inline std::string_view strip_comment(std::string_view line) {
    if (auto pos = line.find('#'); pos != std::string_view::npos)
        line = line.substr(0, pos);
    return line;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

template <class T>
bool parse_number(std::string_view token, T &out) {
    const char *first = token.data();
    const char *last = token.data() + token.size();
    if constexpr (std::is_floating_point_v<T>) {
        if (first != last && *first == '+')
            ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

[[noreturn]] inline void parse_fail(std::size_t line_no, const std::string &what) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + what);
}

} // namespace detail

inline Graph load_edge_list(std::istream &in) {
    std::string raw;
    std::size_t line_no = 0;
    std::size_t n = 0;
    bool have_header = false;
    std::vector<Edge> edges;

    while (std::getline(in, raw)) {
        ++line_no;
        auto tokens = detail::split_ws(detail::strip_comment(raw));
        if (tokens.empty())
            continue;

        if (!have_header) {
            if (tokens.size() != 1 || !detail::parse_number(tokens[0], n))
                detail::parse_fail(line_no, "expected node count, got '" + raw + "'");
            if (n == 0)
                detail::parse_fail(line_no, "node count must be at least 1");
            have_header = true;
            continue;
        }

        if (tokens.size() != 3)
            detail::parse_fail(line_no, "expected 'src dst weight', got '" + raw + "'");
        Edge e{};
        if (!detail::parse_number(tokens[0], e.src) || !detail::parse_number(tokens[1], e.dst))
            detail::parse_fail(line_no, "node indices must be non-negative integers");
        if (!detail::parse_number(tokens[2], e.weight))
            detail::parse_fail(line_no, "weight is not a decimal number");
        edges.push_back(e);
    }

    if (!have_header)
        throw Error(ErrorKind::MissingHeader, "no node count line found");
    return Graph(n, edges);
}

/// Shortest decimal form that parses back to the identical double.
inline std::string format_weight(double w) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, w);
    return std::string(buf, ptr);
}

inline void save_edge_list(const Graph &g, std::ostream &out, std::string_view comment = {}) {
    if (!comment.empty())
        out << "# " << comment << '\n';
    out << g.size() << '\n';
    for (const Edge &e : g.edges())
        out << e.src << ' ' << e.dst << ' ' << format_weight(e.weight) << '\n';
}

} // namespace infect

#endif
