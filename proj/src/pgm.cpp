#include "tmsmooth/pgm.hpp"

#include "tmsmooth/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace tmsmooth {

namespace {

class HeaderReader
{
public:
  explicit HeaderReader(std::string_view bytes)
    : bytes_(bytes)
  {
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  std::string_view bytes() const { return bytes_; }

  // Skip whitespace and '#' comments running to end of line.
  void skip_separators()
  {
    while (pos_ < bytes_.size()) {
      const auto c = static_cast<unsigned char>(bytes_[pos_]);
      if (std::isspace(c)) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r')
          ++pos_;
      } else {
        break;
      }
    }
  }

  long read_uint(const char* what)
  {
    skip_separators();
    const std::size_t start = pos_;
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000)
        throw PgmError(std::string(what) + " too large", start);
      ++pos_;
    }
    if (pos_ == start) {
      if (pos_ >= bytes_.size())
        throw PgmError(std::string("truncated input, expected ") + what, pos_);
      throw PgmError(std::string("expected ") + what, pos_);
    }
    return value;
  }

private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

} // namespace

Image read_pgm(std::string_view bytes)
{
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
    throw PgmError("not a P2/P5 graymap", 0);
  const bool binary = bytes[1] == '5';

  HeaderReader in(bytes);
  in.advance(2);
  in.skip_separators();
  const std::size_t width_at = in.pos();
  const long width = in.read_uint("width");
  const long height = in.read_uint("height");
  if (width < 1 || height < 1)
    throw PgmError("image dimensions must be positive", width_at);
  in.skip_separators();
  const std::size_t maxval_at = in.pos();
  const long maxval = in.read_uint("maxval");
  if (maxval < 1 || maxval > 255)
    throw PgmError("maxval must be in 1..255, got " + std::to_string(maxval), maxval_at);

  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<double> pixels;
  pixels.reserve(count);

  if (binary) {
    // exactly one whitespace byte separates maxval from the raster
    if (in.pos() >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[in.pos()])))
      throw PgmError("missing separator before raster", in.pos());
    in.advance(1);
    if (bytes.size() - in.pos() < count)
      throw PgmError("truncated raster: expected " + std::to_string(count) + " bytes",
                     bytes.size());
    for (std::size_t k = 0; k < count; ++k) {
      const auto v = static_cast<unsigned char>(bytes[in.pos() + k]);
      if (v > maxval)
        throw PgmError("sample exceeds maxval", in.pos() + k);
      pixels.push_back(v);
    }
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t at = in.pos();
      const long v = in.read_uint("sample");
      if (v > maxval)
        throw PgmError("sample exceeds maxval", at);
      pixels.push_back(static_cast<double>(v));
    }
  }
  return Image(static_cast<int>(height), static_cast<int>(width), std::move(pixels));
}

double quantize_8bit(double value)
{
  return std::round(std::clamp(value, 0.0, 255.0));
}

std::string write_pgm(const Image& img, bool binary)
{
  std::ostringstream out;
  out << (binary ? "P5" : "P2") << '\n' << img.cols() << ' ' << img.rows() << "\n255\n";
  if (binary) {
    for (double v : img.pixels())
      out.put(static_cast<char>(static_cast<unsigned char>(quantize_8bit(v))));
  } else {
    for (int i = 0; i < img.rows(); ++i) {
      for (int j = 0; j < img.cols(); ++j) {
        if (j > 0)
          out << ' ';
        out << static_cast<int>(quantize_8bit(img(i, j)));
      }
      out << '\n';
    }
  }
  return out.str();
}

Image load_pgm(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::ios_base::failure("cannot open " + path.string());
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return read_pgm(bytes);
}

void save_pgm(const std::filesystem::path& path, const Image& img, bool binary)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::ios_base::failure("cannot write " + path.string());
  out << write_pgm(img, binary);
  if (!out)
    throw std::ios_base::failure("write failed for " + path.string());
}

} // namespace tmsmooth
