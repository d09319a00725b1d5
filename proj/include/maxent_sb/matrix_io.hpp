// Copyright 2026 The maxent-sb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

// Plain-text matrix format:
//
//   dim=<n>
//   <n rows of n whitespace-separated complex entries written a+bi>
//
// Entries are printed with 17 significant digits so a write/read cycle is
// exact.

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "maxent_sb/operator.hpp"

namespace maxent_sb {

class FormatError : public Error {
 public:
  using Error::Error;
};

inline std::string format_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

/// Parses "a+bi", "a-bi", "a", "bi" (with optional exponents).
inline Complex parse_complex(const std::string& token) {
  if (token.empty()) throw FormatError("empty complex token");
  std::string t = token;
  if (t.back() != 'i') {
    std::size_t used = 0;
    double re = std::stod(t, &used);
    if (used != t.size()) throw FormatError("bad complex token '" + token + "'");
    return {re, 0.0};
  }
  t.pop_back();
  // Split at the last sign that is not the leading one and not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  try {
    if (split == std::string::npos) {
      std::size_t used = 0;
      const std::string im_part = (t.empty() || t == "+") ? "1" : (t == "-" ? "-1" : t);
      double im = std::stod(im_part, &used);
      if (used != im_part.size()) throw FormatError("bad complex token '" + token + "'");
      return {0.0, im};
    }
    const std::string re_s = t.substr(0, split);
    std::string im_s = t.substr(split);
    if (im_s == "+" || im_s == "-") im_s += "1";
    std::size_t used_re = 0, used_im = 0;
    double re = std::stod(re_s, &used_re);
    double im = std::stod(im_s, &used_im);
    if (used_re != re_s.size() || used_im != im_s.size()) throw FormatError("bad complex token '" + token + "'");
    return {re, im};
  } catch (const std::logic_error&) {
    throw FormatError("bad complex token '" + token + "'");
  }
}

inline void write_operator(std::ostream& os, const Operator& x) {
  os << "dim=" << x.dim() << '\n';
  for (Index i = 0; i < x.dim(); ++i) {
    for (Index j = 0; j < x.dim(); ++j) {
      if (j > 0) os << ' ';
      os << format_complex(x(i, j));
    }
    os << '\n';
  }
}

inline Operator read_operator(std::istream& is) {
  std::string header;
  if (!(is >> header) || header.rfind("dim=", 0) != 0) throw FormatError("expected 'dim=<n>' header");
  long long n = 0;
  try {
    n = std::stoll(header.substr(4));
  } catch (const std::logic_error&) {
    throw FormatError("bad dimension in header '" + header + "'");
  }
  if (n <= 0 || n > kMaxDim) throw FormatError("dimension out of range in header '" + header + "'");
  Matrix m(n, n);
  std::string tok;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (!(is >> tok)) throw FormatError("matrix data ended early");
      m(i, j) = parse_complex(tok);
    }
  }
  if (is >> tok) throw FormatError("trailing data after matrix: '" + tok + "'");
  return Operator(std::move(m));
}

inline std::string to_text(const Operator& x) {
  std::ostringstream os;
  write_operator(os, x);
  return os.str();
}

inline void save_operator(const std::string& path, const Operator& x) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  write_operator(os, x);
}

inline Operator load_operator(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open '" + path + "'");
  return read_operator(is);
}

}  // namespace maxent_sb
