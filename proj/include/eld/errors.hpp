#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace eld {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Graph construction / validation. `line` is a 1-based source line for
// errors raised while reading a file; 0 means "not from a file".

namespace detail {
inline std::string at_line(std::size_t line) {
    return line ? " (line " + std::to_string(line) + ")" : "";
}
}  // namespace detail

class SelfLoopError : public Error {
public:
    std::uint32_t vertex;
    explicit SelfLoopError(std::uint32_t i, std::size_t line = 0)
        : Error("self-loop at vertex " + std::to_string(i) + detail::at_line(line)),
          vertex(i) {}
};

class DuplicateEdgeError : public Error {
public:
    std::uint32_t i, j;
    DuplicateEdgeError(std::uint32_t a, std::uint32_t b, std::size_t line = 0)
        : Error("duplicate edge (" + std::to_string(a) + ", " + std::to_string(b) + ")" +
                detail::at_line(line)),
          i(a), j(b) {}
};

class NegativeWeightError : public Error {
public:
    std::uint32_t i, j;
    double weight;
    NegativeWeightError(std::uint32_t a, std::uint32_t b, double w, std::size_t line = 0)
        : Error("negative weight " + std::to_string(w) + " on edge (" + std::to_string(a) +
                ", " + std::to_string(b) + ")" + detail::at_line(line)),
          i(a), j(b), weight(w) {}
};

class VertexOutOfRangeError : public Error {
public:
    std::uint32_t vertex, n;
    VertexOutOfRangeError(std::uint32_t v, std::uint32_t count, std::size_t line = 0)
        : Error("vertex " + std::to_string(v) + " out of range for n=" + std::to_string(count) +
                detail::at_line(line)),
          vertex(v), n(count) {}
};

// Spectral.

class KTooLargeError : public Error {
public:
    std::size_t k, n;
    KTooLargeError(std::size_t kk, std::size_t nn)
        : Error("k=" + std::to_string(kk) + " exceeds the admissible bound for n=" +
                std::to_string(nn)),
          k(kk), n(nn) {}
    KTooLargeError(std::size_t kk, std::size_t nn, const std::string& graph_label)
        : Error("k=" + std::to_string(kk) + " exceeds the admissible bound for graph '" +
                graph_label + "' with n=" + std::to_string(nn)),
          k(kk), n(nn) {}
};

class ConvergenceFailureError : public Error {
public:
    explicit ConvergenceFailureError(const std::string& msg)
        : Error("eigensolver did not converge: " + msg) {}
};

class AllZeroVectorError : public Error {
public:
    AllZeroVectorError() : Error("sign_fix: every entry is within tolerance of zero") {}
};

class DimensionMismatchError : public Error {
public:
    explicit DimensionMismatchError(const std::string& msg)
        : Error("dimension mismatch: " + msg) {}
};

// Transport.

class AxisOutOfRangeError : public Error {
public:
    int axis, k;
    AxisOutOfRangeError(int r, int dim)
        : Error("axis " + std::to_string(r) + " out of range for embedding dimension " +
                std::to_string(dim)),
          axis(r), k(dim) {}
};

class InvalidOrderError : public Error {
public:
    double p;
    explicit InvalidOrderError(double order)
        : Error("transport order p=" + std::to_string(order) + " must be >= 1"), p(order) {}
};

// Generators.

class TooSmallError : public Error {
public:
    explicit TooSmallError(const std::string& msg) : Error("generator: " + msg) {}
};

class BadProbabilityError : public Error {
public:
    double prob;
    explicit BadProbabilityError(double pr)
        : Error("edge probability " + std::to_string(pr) + " outside [0, 1]"), prob(pr) {}
};

class BadScaleError : public Error {
public:
    double scale;
    explicit BadScaleError(double s)
        : Error("exponential scale " + std::to_string(s) + " must be > 0"), scale(s) {}
};

class BadParamsError : public Error {
public:
    explicit BadParamsError(const std::string& msg) : Error(msg) {}
};

// File formats and CLI plumbing.

class ParseError : public Error {
public:
    std::size_t line;  // 1-based; 0 when not tied to a line
    ParseError(const std::string& msg, std::size_t line_no = 0)
        : Error(line_no ? ("line " + std::to_string(line_no) + ": " + msg) : msg),
          line(line_no) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

// Embedding cache files.
class CacheFormatError : public Error {
public:
    enum class Kind { bad_magic, version_mismatch, truncated };
    Kind kind;
    CacheFormatError(Kind k, const std::string& msg) : Error(msg), kind(k) {}
};

}  // namespace eld
