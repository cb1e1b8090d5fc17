#ifndef FSCMM_ERRORS_HPP
#define FSCMM_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace fscmm {

// Base for all toolkit errors. `name()` is the stable machine-readable
// error identifier surfaced by the CLI; what() carries the details.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& message)
        : std::runtime_error(name + ": " + message), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

struct DuplicateId : Error {
    explicit DuplicateId(const std::string& msg) : Error("DuplicateId", msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("ParseError", msg) {}
};

struct MultiLabelUnsupported : Error {
    explicit MultiLabelUnsupported(const std::string& msg) : Error("MultiLabelUnsupported", msg) {}
};

struct MissingLabel : Error {
    explicit MissingLabel(const std::string& msg) : Error("MissingLabel", msg) {}
};

struct InvalidFraction : Error {
    explicit InvalidFraction(const std::string& msg) : Error("InvalidFraction", msg) {}
};

struct ZeroFrequencyFeature : Error {
    explicit ZeroFrequencyFeature(const std::string& msg) : Error("ZeroFrequencyFeature", msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error("DimensionMismatch", msg) {}
};

struct DegenerateLabels : Error {
    explicit DegenerateLabels(const std::string& msg) : Error("DegenerateLabels", msg) {}
};

struct NotEnoughClasses : Error {
    explicit NotEnoughClasses(const std::string& msg) : Error("NotEnoughClasses", msg) {}
};

struct UnknownClass : Error {
    explicit UnknownClass(const std::string& msg) : Error("UnknownClass", msg) {}
};

struct EmptyTrainingSet : Error {
    explicit EmptyTrainingSet(const std::string& msg) : Error("EmptyTrainingSet", msg) {}
};

// Catch-all for contract violations that have no dedicated error above
// (bad hyperparameters, out-of-range indices, negative thresholds, ...).
struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& msg) : Error("InvalidArgument", msg) {}
};

// Filesystem-level failures (missing file, unreadable path).
struct IoError : Error {
    explicit IoError(const std::string& msg) : Error("IoError", msg) {}
};

} // namespace fscmm

#endif
