#ifndef BESTCHOICE_STRATEGY_SPEC_HPP
#define BESTCHOICE_STRATEGY_SPEC_HPP

#include <stdexcept>
#include <string>

#include "bestchoice/core.hpp"

// Textual strategy mini-language used by the command-line tool:
//   x:<real>                          x-strategy
//   d:<int>                           d-strategy
//   cutoffs:<comma list>;tail=<real>  explicit cutoff vector
//   skipfirst:a1=<real>,x=<real>      raised first cutoff over tail x
//   restart:x=<real>,y=<real>         branching restart strategy
//   onee                              alias for x:0.36787944117144233

namespace bestchoice::cli {

struct parse_error : std::runtime_error {
    parse_error(const std::string& what, size_t position_)
        : std::runtime_error(what), position(position_) {}
    size_t position;
};

AnyStrategy parse_strategy(const std::string& text);

// Round-trip printer: parse_strategy(print_strategy(s)) reproduces s.
std::string print_strategy(const AnyStrategy& s);

// Prior file: JSON {"support":[[n,w],...]} or {"geometric":{"theta":t}}.
SampleSizeDistribution load_distribution(const std::string& path);

}  // namespace bestchoice::cli

#endif
