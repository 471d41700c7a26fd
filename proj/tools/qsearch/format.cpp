#include "format.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <stdexcept>

#include "qsearch/version.hpp"

namespace qtool {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt4(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  const std::string log_prefix = "logspace:";
  if (spec.rfind(log_prefix, 0) == 0) {
    const std::string body = spec.substr(log_prefix.size());
    double lo = 0.0, hi = 0.0;
    int n = 0;
    if (std::sscanf(body.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 1 ||
        !(lo > 0.0) || !(hi > 0.0)) {
      throw std::runtime_error("bad logspace spec: " + spec);
    }
    if (n == 1) {
      out.push_back(lo);
      return out;
    }
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i) {
      out.push_back(std::exp(llo + (lhi - llo) * i / (n - 1)));
    }
    return out;
  }
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    const std::string tok = spec.substr(pos, comma - pos);
    if (!tok.empty()) {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::runtime_error("bad grid value: " + tok);
      out.push_back(v);
    }
    pos = comma + 1;
  }
  if (out.empty()) throw std::runtime_error("empty grid spec: " + spec);
  return out;
}

void write_preamble(std::ostream& os, const std::string& invocation,
                    std::uint64_t seed) {
  os << "# qsearch " << qsearch::kVersion << "\n";
  os << "# invocation: " << invocation << "\n";
  os << "# seed: " << seed << "\n";
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct OutputSink::Impl {
  std::ofstream file;
  bool to_stdout = true;
};

OutputSink::OutputSink(const std::string& path) : impl_(new Impl) {
  if (!path.empty()) {
    impl_->file.open(path, std::ios::binary);  // binary: LF endings everywhere
    if (!impl_->file) {
      delete impl_;
      throw std::runtime_error("cannot open output file: " + path);
    }
    impl_->to_stdout = false;
  }
}

OutputSink::~OutputSink() { delete impl_; }

std::ostream& OutputSink::stream() {
  return impl_->to_stdout ? std::cout : impl_->file;
}

}  // namespace qtool
