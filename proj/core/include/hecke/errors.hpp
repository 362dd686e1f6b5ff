#ifndef HECKE_ERRORS_HPP
#define HECKE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hecke {

// Exit-code classes used by the CLI: 2 config, 3 unsupported relation,
// 4 verification failure. Everything else is an internal invariant break.
enum class ErrorKind {
    Internal,
    Config,
    UnsupportedRelation,
    Verification,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct OddPowerPresent : Error {
    explicit OddPowerPresent(const std::string& w) : Error(ErrorKind::Internal, "OddPowerPresent: " + w) {}
};
struct DegreeBoundExceeded : Error {
    explicit DegreeBoundExceeded(const std::string& w) : Error(ErrorKind::Config, "DegreeBoundExceeded: " + w) {}
};
struct NonDividingDegree : Error {
    explicit NonDividingDegree(const std::string& w) : Error(ErrorKind::Internal, "NonDividingDegree: " + w) {}
};
struct WeightBoundExceeded : Error {
    explicit WeightBoundExceeded(const std::string& w) : Error(ErrorKind::Config, "WeightBoundExceeded: " + w) {}
};
struct ConeViolation : Error {
    explicit ConeViolation(const std::string& w) : Error(ErrorKind::Internal, "ConeViolation: " + w) {}
};
struct CollinearInput : Error {
    explicit CollinearInput(const std::string& w) : Error(ErrorKind::Internal, "CollinearInput: " + w) {}
};
struct NotAGeneratorOfAnyTower : Error {
    explicit NotAGeneratorOfAnyTower(const std::string& w)
        : Error(ErrorKind::Internal, "NotAGeneratorOfAnyTower: " + w) {}
};
struct UnsupportedRelation : Error {
    explicit UnsupportedRelation(const std::string& w)
        : Error(ErrorKind::UnsupportedRelation, "UnsupportedRelation: " + w) {}
};
struct StepBudgetExceeded : Error {
    explicit StepBudgetExceeded(const std::string& w) : Error(ErrorKind::Internal, "StepBudgetExceeded: " + w) {}
};
struct SumRuleViolation : Error {
    explicit SumRuleViolation(const std::string& w) : Error(ErrorKind::Verification, "SumRuleViolation: " + w) {}
};
struct NonIntegerMultiplicity : Error {
    explicit NonIntegerMultiplicity(const std::string& w)
        : Error(ErrorKind::Internal, "NonIntegerMultiplicity: " + w) {}
};
struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error(ErrorKind::Config, "ConfigError: " + w) {}
};

} // namespace hecke

#endif
