#include "kron/diagram.hpp"

#include <cctype>

namespace kron {

DiagramTuple parse_tuple(const std::string& s)
{
    DiagramTuple t;
    size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && (std::isspace((unsigned char)s[i]) || s[i] == ',')) ++i;
    };
    skip();
    while (i < s.size()) {
        if (s[i] != '[') throw input_error("expected '[' at position " + std::to_string(i));
        ++i;
        Diagram d;
        while (true) {
            while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
            if (i < s.size() && s[i] == ']') {
                ++i;
                break;
            }
            size_t j = i;
            if (j < s.size() && s[j] == '-') ++j;
            while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
            if (j == i) throw input_error("expected a row length at position " + std::to_string(i));
            long v;
            try {
                v = std::stol(s.substr(i, j - i));
            } catch (const std::out_of_range&) {
                throw input_error("row length out of range");
            }
            d.push_back(v);
            i = j;
            while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
            if (i < s.size() && s[i] == ',') ++i;
            else if (i >= s.size() || s[i] != ']') throw input_error("unterminated diagram");
        }
        if (!is_partition(d)) throw input_error("not a partition: " + print_tuple({d}));
        t.push_back(trim_zeros(d));
        skip();
    }
    if (t.empty()) throw input_error("empty tuple");
    return t;
}

std::string print_tuple(const DiagramTuple& t)
{
    std::string out;
    for (size_t j = 0; j < t.size(); ++j) {
        if (j) out += ' ';
        out += '[';
        for (size_t i = 0; i < t[j].size(); ++i) {
            if (i) out += ',';
            out += std::to_string(t[j][i]);
        }
        out += ']';
    }
    return out;
}

Diagram trim_zeros(Diagram d)
{
    while (!d.empty() && d.back() == 0) d.pop_back();
    return d;
}

long content(const Diagram& d)
{
    long s = 0;
    for (long x : d) s += x;
    return s;
}

bool is_partition(const Diagram& d)
{
    for (size_t i = 0; i < d.size(); ++i) {
        if (d[i] < 0) return false;
        if (i && d[i] > d[i - 1]) return false;
    }
    return true;
}

}  // namespace kron
