#pragma once

#include <stdexcept>
#include <string>

namespace sharpflat {

struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct NotAUnit : std::runtime_error {
    explicit NotAUnit(const std::string& what) : std::runtime_error(what) {}
};

struct LevelUnderflow : std::runtime_error {
    explicit LevelUnderflow(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionRemainder : std::runtime_error {
    int level;
    explicit DivisionRemainder(int lvl)
        : std::runtime_error("nonzero remainder dividing by Phi at level " + std::to_string(lvl)),
          level(lvl) {}
};

struct RelationViolated : std::runtime_error {
    int level;
    explicit RelationViolated(int lvl)
        : std::runtime_error("queue relation fails at level " + std::to_string(lvl)), level(lvl) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct IncompleteLevel : std::runtime_error {
    explicit IncompleteLevel(const std::string& what) : std::runtime_error(what) {}
};

struct DenominatorViolation : std::runtime_error {
    explicit DenominatorViolation(const std::string& what) : std::runtime_error(what) {}
};

struct TieError : std::runtime_error {
    explicit TieError(const std::string& what) : std::runtime_error(what) {}
};

struct SporadicUnsupported : std::runtime_error {
    explicit SporadicUnsupported(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownBranch : std::runtime_error {
    explicit UnknownBranch(const std::string& what) : std::runtime_error(what) {}
};

struct NotStabilized : std::runtime_error {
    explicit NotStabilized(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sharpflat
