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


#include "hyperlinear/group.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "hyperlinear/error.hpp"

namespace hyperlinear {

Word::Word(std::vector<int> letters) {
  letters_.reserve(letters.size());
  for (int k : letters) {
    if (k == 0) throw Error(ErrorCode::BadParams, "word letters must be nonzero");
    if (!letters_.empty() && letters_.back() == -k) {
      letters_.pop_back();
    } else {
      letters_.push_back(k);
    }
  }
}

Word Word::inverse() const {
  std::vector<int> out(letters_.rbegin(), letters_.rend());
  for (int& k : out) k = -k;
  Word w;
  w.letters_ = std::move(out);
  return w;
}

Word Word::operator*(const Word& other) const {
  std::vector<int> joined = letters_;
  joined.insert(joined.end(), other.letters_.begin(), other.letters_.end());
  return Word(std::move(joined));
}

std::string Word::to_string() const {
  if (letters_.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(letters_[i]);
  }
  return out;
}

Word Word::parse(std::string_view text) {
  std::vector<int> letters;
  std::size_t i = 0;
  bool saw_identity = false;
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == '\t' || text[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\r') ++j;
    const std::string_view token = text.substr(i, j - i);
    if (token == "e") {
      saw_identity = true;
    } else {
      int value = 0;
      const char* first = token.data();
      if (!token.empty() && token.front() == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size() || value == 0) {
        throw Error(ErrorCode::Schema, "bad word letter '" + std::string(token) + "'");
      }
      letters.push_back(value);
    }
    i = j;
  }
  if (saw_identity && !letters.empty()) {
    throw Error(ErrorCode::Schema, "'e' must stand alone: '" + std::string(text) + "'");
  }
  return Word(std::move(letters));
}

std::vector<Word> parse_word_list(std::istream& in) {
  std::vector<Word> out;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(Word::parse(line));
  }
  return out;
}

std::vector<Word> read_word_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open word file " + path.string());
  return parse_word_list(in);
}

std::vector<Word> words_up_to_length(int generators, std::size_t max_length) {
  std::vector<Word> out{Word()};
  std::vector<Word> frontier{Word()};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (int k = -generators; k <= generators; ++k) {
        if (k == 0) continue;
        if (!w.empty() && w.letters().back() == -k) continue;
        next.push_back(w * Word::generator(k));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

GroupSpec GroupSpec::presentation(std::vector<std::string> generators, std::vector<Word> relators) {
  GroupSpec g;
  g.kind_ = Kind::Presentation;
  g.generators_ = std::move(generators);
  for (const Word& r : relators) {
    if (r.empty()) throw Error(ErrorCode::InvalidGroup, "relators must be nonempty");
    g.check_word(r);
  }
  g.relators_ = std::move(relators);
  return g;
}

GroupSpec GroupSpec::from_table(std::vector<std::vector<int>> table, int identity,
                                std::vector<std::string> labels) {
  const int n = static_cast<int>(table.size());
  if (n < 1) throw Error(ErrorCode::InvalidGroup, "empty multiplication table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) {
      throw Error(ErrorCode::InvalidGroup, "multiplication table is not square");
    }
    for (int v : row) {
      if (v < 0 || v >= n) throw Error(ErrorCode::InvalidGroup, "table entry out of range");
    }
  }
  if (identity < 0 || identity >= n) throw Error(ErrorCode::InvalidGroup, "identity out of range");
  for (int i = 0; i < n; ++i) {
    if (table[identity][i] != i || table[i][identity] != i) {
      throw Error(ErrorCode::InvalidGroup, "element " + std::to_string(identity) +
                                               " is not a two-sided identity");
    }
  }
  std::vector<int> inverse(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (table[i][j] == identity && table[j][i] == identity) {
        inverse[i] = j;
        break;
      }
    }
    if (inverse[i] < 0) {
      throw Error(ErrorCode::InvalidGroup, "element " + std::to_string(i) + " has no inverse");
    }
  }
  if (n <= 512) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const int ab = table[a][b];
        for (int c = 0; c < n; ++c) {
          if (table[ab][c] != table[a][table[b][c]]) {
            throw Error(ErrorCode::InvalidGroup, "table is not associative at (" +
                                                     std::to_string(a) + ", " + std::to_string(b) +
                                                     ", " + std::to_string(c) + ")");
          }
        }
      }
    }
  }
  if (labels.empty()) {
    for (int i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
  }
  if (static_cast<int>(labels.size()) != n) {
    throw Error(ErrorCode::InvalidGroup, "need one label per element");
  }
  GroupSpec g;
  g.kind_ = Kind::Table;
  g.generators_ = std::move(labels);
  g.table_ = std::move(table);
  g.identity_ = identity;
  g.inverse_ = std::move(inverse);
  return g;
}

GroupSpec GroupSpec::cyclic(int n) {
  if (n < 1) throw Error(ErrorCode::BadParams, "cyclic group order must be >= 1");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  }
  return from_table(std::move(t), 0);
}

GroupSpec GroupSpec::dihedral(int n) {
  if (n < 1) throw Error(ErrorCode::BadParams, "dihedral parameter must be >= 1");
  const int order = 2 * n;
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  // (r^a s^b)(r^c s^d) = r^(a + (-1)^b c) s^(b + d).
  for (int x = 0; x < order; ++x) {
    const int a = x % n, b = x / n;
    for (int y = 0; y < order; ++y) {
      const int c = y % n, d = y / n;
      const int rot = ((b == 0 ? a + c : a - c) % n + n) % n;
      t[x][y] = rot + n * ((b + d) % 2);
    }
  }
  return from_table(std::move(t), 0);
}

GroupSpec GroupSpec::symmetric(int n) {
  if (n < 1 || n > 6) throw Error(ErrorCode::BadParams, "symmetric group degree must be in [1, 6]");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const int order = static_cast<int>(perms.size());
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  std::vector<int> composed(n);
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) {
      for (int x = 0; x < n; ++x) composed[x] = perms[i][perms[j][x]];
      t[i][j] = static_cast<int>(std::lower_bound(perms.begin(), perms.end(), composed) -
                                 perms.begin());
    }
  }
  return from_table(std::move(t), 0);
}

GroupSpec GroupSpec::named(const std::string& name) {
  if (name.size() >= 2) {
    int n = 0;
    const auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), n);
    if (ec == std::errc() && ptr == name.data() + name.size()) {
      switch (name[0]) {
        case 'Z': return cyclic(n);
        case 'D': return dihedral(n);
        case 'S': return symmetric(n);
        default: break;
      }
    }
  }
  throw Error(ErrorCode::UnknownFixture, "unknown group '" + name + "'");
}

void GroupSpec::check_word(const Word& w) const {
  const int n = static_cast<int>(generators_.size());
  for (int k : w.letters()) {
    if (k > n || -k > n) {
      throw Error(ErrorCode::UnknownGenerator, "letter " + std::to_string(k) + " with only " +
                                                   std::to_string(n) + " generators");
    }
  }
}

int GroupSpec::element_of(const Word& w) const {
  if (kind_ != Kind::Table) throw Error(ErrorCode::BadParams, "element_of needs a table group");
  check_word(w);
  int x = identity_;
  for (int k : w.letters()) {
    const int g = k > 0 ? k - 1 : inverse_[-k - 1];
    x = table_[x][g];
  }
  return x;
}

bool GroupSpec::is_identity(const Word& w) const {
  if (kind_ == Kind::Table) return element_of(w) == identity_;
  check_word(w);
  return w.empty();
}

std::vector<Word> GroupSpec::all_elements() const {
  if (kind_ != Kind::Table) throw Error(ErrorCode::BadParams, "all_elements needs a table group");
  std::vector<Word> out;
  for (std::size_t k = 1; k <= table_.size(); ++k) out.push_back(Word::generator(static_cast<int>(k)));
  return out;
}

}  // namespace hyperlinear
