#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kron {

using Diagram = std::vector<long>;
using DiagramTuple = std::vector<Diagram>;

struct input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A configured work or size cap would be exceeded.
struct cap_exceeded : std::length_error {
    using std::length_error::length_error;
};

// "[2,1] [2,1] [3]" <-> tuple; trailing zeros dropped.
DiagramTuple parse_tuple(const std::string& s);
std::string print_tuple(const DiagramTuple& t);
Diagram trim_zeros(Diagram d);
long content(const Diagram& d);
bool is_partition(const Diagram& d);

}  // namespace kron
