#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tmsmooth {

// Malformed PGM input. offset() is the byte position where parsing stopped.
class PgmError : public std::runtime_error
{
public:
  PgmError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")")
    , offset_(offset)
  {
  }

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

// No retained window entry carries a positive spatial weight.
class DegenerateFieldError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Automatic intensity bandwidth collapsed (near-constant image).
class DegenerateScaleError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Bad scene / noise configuration text.
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

} // namespace tmsmooth
