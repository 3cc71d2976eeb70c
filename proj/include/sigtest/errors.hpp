#pragma once

#include <stdexcept>
#include <string>

namespace sigtest {

/// Malformed or inconsistent input data. Maps to CLI exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A method/metric pairing that the tool refuses to run. Exit code 3.
class InvalidCombination : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A statistic that cannot be formed from the data (zero variance, no
/// discriminating items, constant sequences). Exit code 4.
class DegenerateStatistic : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sigtest
