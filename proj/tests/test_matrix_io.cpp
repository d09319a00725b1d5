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


#include <sstream>

#include "test_support.hpp"

namespace maxent_sb {
namespace {

TEST(MatrixIo, RoundTripIsExact) {
  Rng rng(5);
  const Operator x(ginibre(4, 4, rng));
  std::stringstream ss;
  write_operator(ss, x);
  const Operator y = read_operator(ss);
  EXPECT_EQ(x.matrix(), y.matrix());
}

TEST(MatrixIo, HeaderAndEntryFormat) {
  const std::string text = to_text(Operator(pauli::y()));
  EXPECT_EQ(text.rfind("dim=2\n", 0), 0u);
  EXPECT_NE(text.find("0-1i"), std::string::npos);
}

TEST(MatrixIo, ParsesHandWrittenVariants) {
  EXPECT_EQ(parse_complex("1.5"), Complex(1.5, 0));
  EXPECT_EQ(parse_complex("-2i"), Complex(0, -2));
  EXPECT_EQ(parse_complex("i"), Complex(0, 1));
  EXPECT_EQ(parse_complex("1e-3+2.5e1i"), Complex(1e-3, 25));
  EXPECT_EQ(parse_complex("3-i"), Complex(3, -1));
}

TEST(MatrixIo, RejectsMalformedInput) {
  std::istringstream no_header("1 0\n0 1\n");
  EXPECT_THROW(read_operator(no_header), FormatError);
  std::istringstream short_data("dim=2\n1 0\n0\n");
  EXPECT_THROW(read_operator(short_data), FormatError);
  std::istringstream trailing("dim=1\n1 2\n");
  EXPECT_THROW(read_operator(trailing), FormatError);
  EXPECT_THROW(parse_complex("1+x"), FormatError);
}

}  // namespace
}  // namespace maxent_sb
