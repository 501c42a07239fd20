#include "tribody/cli/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <unistd.h>

namespace tribody::cli {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_row(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += fmt(values[i]);
  }
  out += '\n';
  return out;
}

void write_atomic(const std::string& dir, const std::string& name, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target = fs::path(dir) / name;
  fs::create_directories(target.parent_path());
  const fs::path tmp = fs::path(dir) / ("." + name + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename onto " + target.string() + ": " + ec.message());
  }
}

}  // namespace tribody::cli
