// Copyright 2026 The hyperlinear Authors
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

#include <compare>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace hyperlinear {

/// Freely reduced word over signed 1-based generator indices: +k is
/// generator k, -k its inverse. The empty word is the identity.
class Word {
 public:
  Word() = default;
  /// Throws BadParams on a zero letter.
  explicit Word(std::vector<int> letters);

  static Word generator(int k) { return Word({k}); }

  const std::vector<int>& letters() const noexcept { return letters_; }
  bool empty() const noexcept { return letters_.empty(); }
  std::size_t length() const noexcept { return letters_.size(); }

  Word inverse() const;
  /// Concatenation followed by free reduction.
  Word operator*(const Word& other) const;

  /// "e" for the identity, else the letters separated by single spaces.
  std::string to_string() const;
  /// Inverse of to_string; also accepts tabs and repeated spaces.
  static Word parse(std::string_view text);

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<int> letters_;
};

/// One word per line; '#' starts a comment; blank lines are skipped.
std::vector<Word> parse_word_list(std::istream& in);
std::vector<Word> read_word_file(const std::filesystem::path& path);

/// Every reduced word of length <= max_length over `generators` letters.
std::vector<Word> words_up_to_length(int generators, std::size_t max_length);

/// A finitely generated group, either as generators and relators or as a
/// full multiplication table. A table group of order n has n generators,
/// generator k standing for element k - 1.
class GroupSpec {
 public:
  enum class Kind { Presentation, Table };

  /// Relators must be nonempty reduced words over the given generators.
  static GroupSpec presentation(std::vector<std::string> generators, std::vector<Word> relators);

  /// table[i][j] is the index of element i * j. Checks closure, the
  /// identity and inverses, and associativity exhaustively up to order 512.
  static GroupSpec from_table(std::vector<std::vector<int>> table, int identity,
                              std::vector<std::string> labels = {});

  /// Z/n as a table.
  static GroupSpec cyclic(int n);
  /// Symmetry group of the regular n-gon, order 2n; element r^i s^j has index i + n j.
  static GroupSpec dihedral(int n);
  /// Permutations of {0, ..., n-1} in lexicographic order, (s t)(x) = s(t(x)).
  static GroupSpec symmetric(int n);
  /// "Z<n>", "D<n>" or "S<n>". Throws UnknownFixture.
  static GroupSpec named(const std::string& name);

  Kind kind() const noexcept { return kind_; }
  const std::vector<std::string>& generators() const noexcept { return generators_; }
  std::size_t num_generators() const noexcept { return generators_.size(); }
  const std::vector<Word>& relators() const noexcept { return relators_; }
  const std::vector<std::vector<int>>& table() const noexcept { return table_; }
  int identity() const noexcept { return identity_; }
  const std::vector<int>& inverses() const noexcept { return inverse_; }
  /// Group order for table kind, 0 otherwise.
  std::size_t order() const noexcept { return table_.size(); }

  /// Throws UnknownGenerator when a letter is out of range.
  void check_word(const Word& w) const;
  /// Table kind: the element w multiplies out to. Throws BadParams otherwise.
  int element_of(const Word& w) const;
  /// Syntactic identity for presentations, table identity for tables.
  bool is_identity(const Word& w) const;
  /// Single-letter words for all table elements, in index order.
  std::vector<Word> all_elements() const;

 private:
  GroupSpec() = default;

  Kind kind_ = Kind::Presentation;
  std::vector<std::string> generators_;
  std::vector<Word> relators_;
  std::vector<std::vector<int>> table_;
  int identity_ = 0;
  std::vector<int> inverse_;
};

}  // namespace hyperlinear
