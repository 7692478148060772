#ifndef CRCALC_ERROR_HPP
#define CRCALC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace crcalc {

// Error taxonomy. The CLI maps categories to exit codes:
// parse errors -> 2, geometry errors -> 3, verification failures -> 4.
enum class ErrorKind {
    SyntaxError,
    UnboundSymbol,
    ShapeMismatch,
    DivisionByZeroConstantTerm,
    OrderExhausted,
    SingularGradient,
    NotStrictlyPseudoconvex,
    ConsistencyFailure,
    NotReal,
    NotImaginary,
    WeightError,
    NotTangent,
    BadInput,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

    int exit_code() const {
        switch (kind_) {
        case ErrorKind::SyntaxError:
        case ErrorKind::UnboundSymbol:
        case ErrorKind::BadInput:
            return 2;
        case ErrorKind::ConsistencyFailure:
            return 4;
        default:
            return 3;
        }
    }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

} // namespace crcalc

#endif
