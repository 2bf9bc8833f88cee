#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace isorec {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyDataset : Error {
    EmptyDataset() : Error("dataset is empty") {}
};

struct InvalidSample : Error {
    std::size_t index;
    explicit InvalidSample(std::size_t i, const std::string& what)
        : Error("sample " + std::to_string(i) + ": " + what), index(i) {}
};

struct TooLarge : Error {
    explicit TooLarge(std::size_t n, std::size_t limit)
        : Error("n = " + std::to_string(n) + " exceeds limit " + std::to_string(limit)) {}
};

struct OutOfRange : Error {
    std::size_t index;
    explicit OutOfRange(std::size_t k, const std::string& what)
        : Error("index " + std::to_string(k) + " out of range: " + what), index(k) {}
};

struct WouldBreakMonotonicity : Error {
    std::size_t index;
    explicit WouldBreakMonotonicity(std::size_t k)
        : Error("merging blocks " + std::to_string(k) + " and " + std::to_string(k + 1) +
                " would break strict ordering against a neighbor"),
          index(k) {}
};

struct FitDataMismatch : Error {
    FitDataMismatch(std::size_t fit_n, std::size_t data_n)
        : Error("fit covers " + std::to_string(fit_n) + " samples but dataset has " +
                std::to_string(data_n)) {}
};

struct LengthMismatch : Error {
    explicit LengthMismatch(const std::string& what) : Error("length mismatch: " + what) {}
};

struct NonPositiveValue : Error {
    std::size_t index;
    explicit NonPositiveValue(std::size_t i, const std::string& what)
        : Error("element " + std::to_string(i) + ": " + what), index(i) {}
};

struct InvalidConfig : Error {
    std::string field;
    InvalidConfig(std::string f, const std::string& what)
        : Error(f + ": " + what), field(std::move(f)) {}
};

// Malformed file content; the CLI reports it as a usage-level failure.
struct ParseError : Error {
    using Error::Error;
};

// Filesystem-level failure opening, reading, or writing a path.
struct IoError : Error {
    using Error::Error;
};

}  // namespace isorec
