#pragma once

#include <stdexcept>
#include <string>

namespace dani {

// Numeric values match dani_status in dani.h.
enum class ErrorCode {
  kConfig = 1,
  kIo = 2,
  kParse = 3,
  kFormat = 4,
  kFrozen = 5,
  kFetch = 6,
  kIntegrity = 7,
  kTrainData = 8,
  kDecode = 9,
  kUnknownAttribute = 10,
  kUnresolved = 11,
  kNoPath = 12,
  kInternal = 13,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define DANI_DEFINE_ERROR(Name, Code)                                   \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(ErrorCode::Code, what) {} \
  };

DANI_DEFINE_ERROR(ConfigError, kConfig)
DANI_DEFINE_ERROR(IoError, kIo)
DANI_DEFINE_ERROR(FormatError, kFormat)
DANI_DEFINE_ERROR(FrozenError, kFrozen)
DANI_DEFINE_ERROR(FetchError, kFetch)
DANI_DEFINE_ERROR(IntegrityError, kIntegrity)
DANI_DEFINE_ERROR(TrainDataError, kTrainData)
DANI_DEFINE_ERROR(DecodeError, kDecode)
DANI_DEFINE_ERROR(UnknownAttributeError, kUnknownAttribute)
DANI_DEFINE_ERROR(UnresolvedError, kUnresolved)
DANI_DEFINE_ERROR(NoPathError, kNoPath)

#undef DANI_DEFINE_ERROR

// Parse failures carry the offending line number (1-based within the file,
// 0 when unknown).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error(ErrorCode::kParse,
              (line ? "line " + std::to_string(line) + ": " : std::string()) + reason),
        line_(line),
        reason_(reason) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

}  // namespace dani
