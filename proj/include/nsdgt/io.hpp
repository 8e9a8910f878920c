#pragma once

#include <iosfwd>
#include <string>

#include "nsdgt/error.hpp"
#include "nsdgt/types.hpp"

namespace nsdgt {

class FormatError : public Error {
 public:
  using Error::Error;
};

enum class FileFormat { Csv, Binary };

// ".csv" (any case) selects CSV, everything else binary.
FileFormat format_from_path(const std::string& path);

// 17 significant digits, '.' decimal separator, no locale.
std::string format_double(double x);

// Signal/window files. Binary: "NSLG", u32 LE length, LE float64 (re, im)
// pairs. CSV: one "re,im" per line. Readers detect the format by magic.
CVector read_signal(std::istream& is);
void write_signal(std::ostream& os, std::span<const Complex> x, FileFormat fmt);
CVector read_signal_file(const std::string& path);
void write_signal_file(const std::string& path, std::span<const Complex> x);

// Coefficient files. Binary: "NSLC", u32 M, u32 N, pairs with m running
// fastest. CSV: header "m,n,re,im".
CoefGrid read_coefs(std::istream& is);
void write_coefs(std::ostream& os, const CoefGrid& c, FileFormat fmt);
CoefGrid read_coefs_file(const std::string& path);
void write_coefs_file(const std::string& path, const CoefGrid& c);

}  // namespace nsdgt
