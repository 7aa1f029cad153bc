#pragma once

#include <stdexcept>
#include <string>

namespace pairsim {

// Input text could not be parsed (edge list, label file, table file).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid measure spec or configuration value.
class SpecError : public std::runtime_error {
public:
    explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

// Well-formed input that cannot satisfy the requested operation,
// e.g. too few eligible query nodes for an evaluation run.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Node id outside the graph, or mismatched table dimensions.
class BoundsError : public std::out_of_range {
public:
    explicit BoundsError(const std::string& what) : std::out_of_range(what) {}
};

// Dense solve refused: the graph exceeds the configured memory gate.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// API misuse: asking for transitions out of a terminal or stopped state.
class ContractError : public std::logic_error {
public:
    explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace pairsim
