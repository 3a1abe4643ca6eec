#pragma once

#include <stdexcept>
#include <string>

namespace stepanov {

enum class ErrorCode {
  InvalidArgument = 1,
  InvalidExponent,
  Shape,
  InsufficientWindow,
  Alignment,
  Parse,
  Evaluation,
  Io,
  Unconfigured,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Thrown by the expression DSL; offset is a byte offset into the source text.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : Error(ErrorCode::Parse, what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Non-finite evaluation result. t and cell locate the failing sample when known.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double t, long cell, std::size_t offset = npos)
      : Error(ErrorCode::Evaluation, what), t_(t), cell_(cell), offset_(offset) {}
  double t() const noexcept { return t_; }
  long cell() const noexcept { return cell_; }
  std::size_t offset() const noexcept { return offset_; }
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  double t_;
  long cell_;
  std::size_t offset_;
};

}  // namespace stepanov
