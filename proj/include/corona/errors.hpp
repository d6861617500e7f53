#ifndef CORONA_ERRORS_HPP
#define CORONA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace corona {

// Exit-code categories used by the CLI front end.
enum class Errc {
    invalid_input = 2,   // bad arguments, config, or out-of-contract inputs
    degenerate    = 3,   // near-pole / degenerate numerics
    inconsistency = 4    // internal cross-check failure
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    Errc code() const { return code_; }
private:
    Errc code_;
};

struct InvalidInput : Error {
    explicit InvalidInput(const std::string& msg) : Error(Errc::invalid_input, msg) {}
};

struct NonPositiveArgument : InvalidInput {
    explicit NonPositiveArgument(const std::string& msg) : InvalidInput(msg) {}
};
struct OrderOutOfRange : InvalidInput {
    explicit OrderOutOfRange(const std::string& msg) : InvalidInput(msg) {}
};
struct ArgumentOverflow : InvalidInput {
    explicit ArgumentOverflow(const std::string& msg) : InvalidInput(msg) {}
};
struct NonPositiveRadius : InvalidInput {
    explicit NonPositiveRadius(const std::string& msg) : InvalidInput(msg) {}
};
struct NotDiffusionRegime : InvalidInput {
    explicit NotDiffusionRegime(const std::string& msg) : InvalidInput(msg) {}
};
struct CrossRegionUnsupported : InvalidInput {
    explicit CrossRegionUnsupported(const std::string& msg) : InvalidInput(msg) {}
};
struct DegenerateRange : InvalidInput {
    explicit DegenerateRange(const std::string& msg) : InvalidInput(msg) {}
};

// Proximity to a resonance or a spurious zero of a cascade denominator;
// carries the name of the quantity that degenerated.
struct NearPole : Error {
    NearPole(const std::string& quantity, const std::string& msg)
        : Error(Errc::degenerate, msg), quantity_(quantity) {}
    const std::string& quantity() const { return quantity_; }
private:
    std::string quantity_;
};

struct WronskianDegenerate : Error {
    explicit WronskianDegenerate(const std::string& msg) : Error(Errc::degenerate, msg) {}
};
struct StepFailure : Error {
    explicit StepFailure(const std::string& msg) : Error(Errc::degenerate, msg) {}
};
struct NoConvergence : Error {
    explicit NoConvergence(const std::string& msg) : Error(Errc::degenerate, msg) {}
};
struct InternalConsistency : Error {
    explicit InternalConsistency(const std::string& msg) : Error(Errc::inconsistency, msg) {}
};

} // namespace corona

#endif
