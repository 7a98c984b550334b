#pragma once

#include <stdexcept>
#include <string>

namespace nri {

// Failure modes the analysis layer needs to tell apart. Per-cell map
// evaluation stores the kind instead of letting the exception abort the map.
enum class ErrorKind {
    None,
    NearSingular,        // |xi| below the configured floor
    SingularSystem,      // steady-state matrix numerically singular
    CMPole,              // Clausius-Mossotti denominator below floor
    NoEnclosingContour,  // no closed contour encloses the reference point
    DegenerateFit,       // circle fit on collinear points
    Config,              // invalid configuration / input
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::None: return "None";
        case ErrorKind::NearSingular: return "NearSingular";
        case ErrorKind::SingularSystem: return "SingularSystem";
        case ErrorKind::CMPole: return "CMPole";
        case ErrorKind::NoEnclosingContour: return "NoEnclosingContour";
        case ErrorKind::DegenerateFit: return "DegenerateFit";
        case ErrorKind::Config: return "Config";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

class NearSingularError : public Error {
  public:
    explicit NearSingularError(const std::string& what)
        : Error(ErrorKind::NearSingular, what) {}
};

class SingularSystemError : public Error {
  public:
    explicit SingularSystemError(const std::string& what)
        : Error(ErrorKind::SingularSystem, what) {}
};

class CMPoleError : public Error {
  public:
    explicit CMPoleError(const std::string& what)
        : Error(ErrorKind::CMPole, what) {}
};

class NoEnclosingContourError : public Error {
  public:
    explicit NoEnclosingContourError(const std::string& what)
        : Error(ErrorKind::NoEnclosingContour, what) {}
};

class DegenerateFitError : public Error {
  public:
    explicit DegenerateFitError(const std::string& what)
        : Error(ErrorKind::DegenerateFit, what) {}
};

// Carries the offending key path so the CLI can point at the bad line.
class ConfigError : public Error {
  public:
    ConfigError(const std::string& key, const std::string& reason)
        : Error(ErrorKind::Config, key.empty() ? reason : key + ": " + reason),
          key_(key) {}
    const std::string& key() const { return key_; }

  private:
    std::string key_;
};

}  // namespace nri
