#pragma once

#include <stdexcept>
#include <string>

namespace sammy {

// Error classes map 1:1 onto CLI exit codes (see README).
enum class ErrKind {
  Io = 1,
  Parse = 2,
  Type = 3,
  StepLimit = 4,
  SizeBound = 5,
  NoUniversal = 6,
  Budget = 7,
  Internal = 8,
};

inline const char* err_kind_name(ErrKind k) {
  switch (k) {
    case ErrKind::Io: return "IoError";
    case ErrKind::Parse: return "ParseError";
    case ErrKind::Type: return "TypeError";
    case ErrKind::StepLimit: return "StepLimit";
    case ErrKind::SizeBound: return "SizeBound";
    case ErrKind::NoUniversal: return "NoUniversal";
    case ErrKind::Budget: return "BudgetExhausted";
    case ErrKind::Internal: return "InternalError";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrKind kind, const std::string& msg)
      : std::runtime_error(std::string(err_kind_name(kind)) + ": " + msg),
        kind_(kind),
        msg_(msg) {}

  ErrKind kind() const { return kind_; }
  const std::string& message() const { return msg_; }

 private:
  ErrKind kind_;
  std::string msg_;
};

[[noreturn]] inline void fail(ErrKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace sammy
