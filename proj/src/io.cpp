#include "nsdgt/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <vector>

namespace nsdgt {

namespace {

constexpr char kSignalMagic[4] = {'N', 'S', 'L', 'G'};
constexpr char kCoefMagic[4] = {'N', 'S', 'L', 'C'};

void put_u32(std::ostream& os, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 4);
}

void put_f64(std::ostream& os, double x) {
  auto v = std::bit_cast<std::uint64_t>(x);
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 8);
}

std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return v;
}

double get_f64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return std::bit_cast<double>(v);
}

std::string slurp(std::istream& is) { return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()}; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto k = line.find(',', pos);
    out.push_back(trim(line.substr(pos, k == std::string_view::npos ? std::string_view::npos : k - pos)));
    if (k == std::string_view::npos) break;
    pos = k + 1;
  }
  return out;
}

template <class T>
bool parse(std::string_view s, T& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

std::vector<std::string_view> lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto k = text.find('\n', pos);
    if (k == std::string_view::npos) k = text.size();
    out.push_back(trim(text.substr(pos, k - pos)));
    pos = k + 1;
  }
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open '" + path + "' for writing");
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open '" + path + "'");
  return is;
}

}  // namespace

FileFormat format_from_path(const std::string& path) {
  if (path.size() >= 4) {
    std::string ext = path.substr(path.size() - 4);
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (ext == ".csv") return FileFormat::Csv;
  }
  return FileFormat::Binary;
}

std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  (void)ec;
  return {buf, p};
}

CVector read_signal(std::istream& is) {
  const std::string data = slurp(is);
  if (data.size() >= 4 && std::memcmp(data.data(), kSignalMagic, 4) == 0) {
    if (data.size() < 8) throw FormatError("truncated signal header");
    auto* p = reinterpret_cast<const unsigned char*>(data.data());
    const std::uint32_t L = get_u32(p + 4);
    if (data.size() != 8 + 16 * static_cast<std::size_t>(L))
      throw FormatError("signal payload does not match declared length " + std::to_string(L));
    CVector x(L);
    for (std::uint32_t i = 0; i < L; ++i) x[i] = {get_f64(p + 8 + 16 * i), get_f64(p + 16 + 16 * i)};
    return x;
  }
  CVector x;
  std::size_t lineno = 0;
  for (auto line : lines(data)) {
    ++lineno;
    if (line.empty() || line.front() == '#') continue;
    auto f = split(line);
    double re = 0, im = 0;
    bool ok = f.size() <= 2 && parse(f[0], re) && (f.size() == 1 || parse(f[1], im));
    if (!ok) {
      if (x.empty() && lineno == 1) continue;  // header
      throw FormatError("bad signal line " + std::to_string(lineno) + ": '" + std::string(line) + "'");
    }
    x.emplace_back(re, im);
  }
  if (x.empty()) throw FormatError("empty signal");
  return x;
}

void write_signal(std::ostream& os, std::span<const Complex> x, FileFormat fmt) {
  if (fmt == FileFormat::Binary) {
    os.write(kSignalMagic, 4);
    put_u32(os, static_cast<std::uint32_t>(x.size()));
    for (const auto& v : x) {
      put_f64(os, v.real());
      put_f64(os, v.imag());
    }
    return;
  }
  for (const auto& v : x) os << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
}

CVector read_signal_file(const std::string& path) {
  auto is = open_in(path);
  return read_signal(is);
}

void write_signal_file(const std::string& path, std::span<const Complex> x) {
  auto os = open_out(path);
  write_signal(os, x, format_from_path(path));
}

CoefGrid read_coefs(std::istream& is) {
  const std::string data = slurp(is);
  if (data.size() >= 4 && std::memcmp(data.data(), kCoefMagic, 4) == 0) {
    if (data.size() < 12) throw FormatError("truncated coefficient header");
    auto* p = reinterpret_cast<const unsigned char*>(data.data());
    const std::uint32_t M = get_u32(p + 4), N = get_u32(p + 8);
    const std::size_t count = static_cast<std::size_t>(M) * N;
    if (data.size() != 12 + 16 * count) throw FormatError("coefficient payload does not match declared dimensions");
    CoefGrid c(M, N);
    for (std::size_t i = 0; i < count; ++i) c.data()[i] = {get_f64(p + 12 + 16 * i), get_f64(p + 20 + 16 * i)};
    return c;
  }
  struct Entry {
    Index m, n;
    double re, im;
  };
  std::vector<Entry> entries;
  Index M = 0, N = 0;
  bool header = false;
  std::size_t lineno = 0;
  for (auto line : lines(data)) {
    ++lineno;
    if (line.empty()) continue;
    if (!header) {
      if (line != "m,n,re,im") throw FormatError("coefficient CSV must start with header m,n,re,im");
      header = true;
      continue;
    }
    auto f = split(line);
    Entry e{};
    if (f.size() != 4 || !parse(f[0], e.m) || !parse(f[1], e.n) || !parse(f[2], e.re) || !parse(f[3], e.im) ||
        e.m < 0 || e.n < 0)
      throw FormatError("bad coefficient line " + std::to_string(lineno));
    M = std::max(M, e.m + 1);
    N = std::max(N, e.n + 1);
    entries.push_back(e);
  }
  if (entries.empty() || static_cast<Index>(entries.size()) != M * N)
    throw FormatError("coefficient CSV does not cover a full M x N grid");
  CoefGrid c(M, N);
  std::vector<char> seen(static_cast<std::size_t>(M * N));
  for (const auto& e : entries) {
    auto& flag = seen[static_cast<std::size_t>(e.n * M + e.m)];
    if (flag) throw FormatError("duplicate coefficient entry");
    flag = 1;
    c(e.m, e.n) = {e.re, e.im};
  }
  return c;
}

void write_coefs(std::ostream& os, const CoefGrid& c, FileFormat fmt) {
  if (fmt == FileFormat::Binary) {
    os.write(kCoefMagic, 4);
    put_u32(os, static_cast<std::uint32_t>(c.channels()));
    put_u32(os, static_cast<std::uint32_t>(c.steps()));
    for (const auto& v : c.data()) {
      put_f64(os, v.real());
      put_f64(os, v.imag());
    }
    return;
  }
  os << "m,n,re,im\n";
  for (Index n = 0; n < c.steps(); ++n)
    for (Index m = 0; m < c.channels(); ++m)
      os << m << ',' << n << ',' << format_double(c(m, n).real()) << ',' << format_double(c(m, n).imag()) << '\n';
}

CoefGrid read_coefs_file(const std::string& path) {
  auto is = open_in(path);
  return read_coefs(is);
}

void write_coefs_file(const std::string& path, const CoefGrid& c) {
  auto os = open_out(path);
  write_coefs(os, c, format_from_path(path));
}

}  // namespace nsdgt
