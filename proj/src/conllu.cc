// Copyright 2026 The Treeconv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "treeconv/conllu.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "treeconv/errors.h"

namespace treeconv {
namespace {

constexpr std::size_t kColumns = 10;

// Digits only, no sign, no leading zeros; anything else would not survive a
// byte-exact round trip.
bool ParseCanonicalInt(std::string_view text, int* value) {
  if (text.empty() || (text.size() > 1 && text[0] == '0')) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), *value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool IsDecimalPair(std::string_view text, char separator) {
  const std::size_t pos = text.find(separator);
  if (pos == std::string_view::npos) return false;
  int a = 0;
  int b = 0;
  return ParseCanonicalInt(text.substr(0, pos), &a) &&
         ParseCanonicalInt(text.substr(pos + 1), &b);
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

class Reader {
 public:
  Reader(const ParseOptions& options, std::vector<std::string>* warnings)
      : options_(options), warnings_(warnings) {}

  Corpus Run(std::string_view text) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") {
      throw MalformedLine(1, "byte-order mark is not supported");
    }
    std::size_t line_number = 0;
    std::size_t start = 0;
    while (start < text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++line_number;
      HandleLine(text.substr(start, end - start), line_number);
      start = end + 1;
    }
    if (pending_) FinishSentence();
    return std::move(corpus_);
  }

 private:
  void Warn(std::string message) {
    if (warnings_ != nullptr) warnings_->push_back(std::move(message));
  }

  void HandleLine(std::string_view line, std::size_t line_number) {
    if (!IsValidUtf8(line)) throw MalformedLine(line_number, "invalid UTF-8");
    if (line.empty()) {
      if (pending_) {
        FinishSentence();
      } else if (options_.strict) {
        throw MalformedLine(line_number, "unexpected blank line");
      } else {
        Warn("line " + std::to_string(line_number) + ": skipped blank line");
      }
      return;
    }
    pending_ = true;
    if (line.front() == '#') {
      current_.extras.push_back({NonSyntacticLine::Kind::kComment,
                                 std::string(line), current_.tokens.size()});
      return;
    }
    const std::vector<std::string_view> fields = SplitTabs(line);
    if (fields.size() != kColumns) {
      throw MalformedLine(line_number, "expected 10 tab-separated columns, found " +
                                           std::to_string(fields.size()));
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (fields[i].empty()) {
        throw MalformedLine(line_number,
                            "empty field in column " + std::to_string(i + 1));
      }
    }
    const std::string_view id = fields[0];
    if (id.find('-') != std::string_view::npos) {
      if (!IsDecimalPair(id, '-')) {
        throw MalformedLine(line_number, "malformed range id '" + std::string(id) + "'");
      }
      current_.extras.push_back({NonSyntacticLine::Kind::kMultiwordRange,
                                 std::string(line), current_.tokens.size()});
      return;
    }
    if (id.find('.') != std::string_view::npos) {
      if (!IsDecimalPair(id, '.')) {
        throw MalformedLine(line_number, "malformed empty-node id '" + std::string(id) + "'");
      }
      current_.extras.push_back({NonSyntacticLine::Kind::kEmptyNode,
                                 std::string(line), current_.tokens.size()});
      return;
    }

    Token token;
    if (!ParseCanonicalInt(id, &token.id) || token.id < 1) {
      throw MalformedLine(line_number, "non-integer token id '" + std::string(id) + "'");
    }
    if (static_cast<std::size_t>(token.id) != current_.tokens.size() + 1) {
      throw MalformedLine(line_number, "token id " + std::to_string(token.id) +
                                           " out of sequence");
    }
    if (!ParseCanonicalInt(fields[6], &token.head)) {
      throw MalformedLine(line_number, "non-integer head '" + std::string(fields[6]) + "'");
    }
    token.form = fields[1];
    token.lemma = fields[2];
    token.upos = fields[3];
    token.xpos = fields[4];
    token.feats = fields[5];
    token.deprel = fields[7];
    token.deps = fields[8];
    token.misc = fields[9];
    current_.tokens.push_back(std::move(token));
    token_lines_.push_back(line_number);
  }

  void FinishSentence() {
    const std::size_t n = current_.tokens.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (static_cast<std::size_t>(current_.tokens[i].head) > n) {
        throw MalformedLine(token_lines_[i], "head " +
                                                 std::to_string(current_.tokens[i].head) +
                                                 " exceeds sentence length " +
                                                 std::to_string(n));
      }
    }
    const std::string problem = CheckTree(current_);
    if (!problem.empty()) {
      if (options_.strict) throw CyclicTree(corpus_.sentences.size(), problem);
      Warn("sentence " + std::to_string(corpus_.sentences.size()) + ": " + problem);
    }
    corpus_.sentences.push_back(std::move(current_));
    current_ = Sentence();
    token_lines_.clear();
    pending_ = false;
  }

  const ParseOptions& options_;
  std::vector<std::string>* warnings_;
  Corpus corpus_;
  Sentence current_;
  std::vector<std::size_t> token_lines_;
  bool pending_ = false;
};

}  // namespace

std::size_t Corpus::TokenCount() const {
  std::size_t total = 0;
  for (const Sentence& s : sentences) total += s.tokens.size();
  return total;
}

std::size_t Corpus::ArcCount() const {
  std::size_t total = 0;
  for (const Sentence& s : sentences) {
    for (const Token& t : s.tokens) total += t.head > 0 ? 1 : 0;
  }
  return total;
}

Corpus ParseCorpus(std::string_view text, const ParseOptions& options,
                   std::vector<std::string>* warnings) {
  return Reader(options, warnings).Run(text);
}

Corpus ReadCorpusFile(const std::string& path, const ParseOptions& options,
                      std::vector<std::string>* warnings) {
  Corpus corpus = ParseCorpus(ReadFile(path), options, warnings);
  corpus.source_path = path;
  return corpus;
}

std::string SerializeToken(const Token& t) {
  std::string out;
  out.reserve(64);
  out += std::to_string(t.id);
  for (const std::string* field : {&t.form, &t.lemma, &t.upos, &t.xpos, &t.feats}) {
    out += '\t';
    out += *field;
  }
  out += '\t';
  out += std::to_string(t.head);
  for (const std::string* field : {&t.deprel, &t.deps, &t.misc}) {
    out += '\t';
    out += *field;
  }
  return out;
}

std::string SerializeSentence(const Sentence& sentence) {
  std::string out;
  std::size_t extra = 0;
  for (std::size_t i = 0; i <= sentence.tokens.size(); ++i) {
    while (extra < sentence.extras.size() && sentence.extras[extra].anchor <= i) {
      out += sentence.extras[extra].raw;
      out += '\n';
      ++extra;
    }
    if (i < sentence.tokens.size()) {
      out += SerializeToken(sentence.tokens[i]);
      out += '\n';
    }
  }
  // Extras anchored past the end (only possible for hand-built sentences).
  for (; extra < sentence.extras.size(); ++extra) {
    out += sentence.extras[extra].raw;
    out += '\n';
  }
  out += '\n';
  return out;
}

std::string SerializeCorpus(const Corpus& corpus) {
  std::string out;
  for (const Sentence& s : corpus.sentences) out += SerializeSentence(s);
  return out;
}

std::string CheckTree(const Sentence& sentence) {
  const std::size_t n = sentence.tokens.size();
  if (n == 0) return "";
  std::size_t roots = 0;
  for (const Token& t : sentence.tokens) {
    if (t.head == 0) ++roots;
    if (t.head < 0 || static_cast<std::size_t>(t.head) > n) {
      return "head " + std::to_string(t.head) + " out of range";
    }
  }
  if (roots != 1) return "expected exactly one root, found " + std::to_string(roots);
  // 0 = unvisited, 1 = on current path, 2 = reaches root.
  std::vector<int> state(n + 1, 0);
  state[0] = 2;
  for (std::size_t start = 1; start <= n; ++start) {
    std::vector<std::size_t> path;
    std::size_t node = start;
    while (state[node] == 0) {
      state[node] = 1;
      path.push_back(node);
      node = static_cast<std::size_t>(sentence.tokens[node - 1].head);
    }
    if (state[node] == 1) return "cycle through token " + std::to_string(node);
    for (std::size_t p : path) state[p] = 2;
  }
  return "";
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("short write to '" + path + "'");
}

bool IsValidUtf8(std::string_view text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    unsigned int code = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      code = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      code = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      code = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      code = (code << 6) | (cc & 0x3F);
    }
    // Overlong encodings, surrogates and out-of-range code points.
    if ((len == 2 && code < 0x80) || (len == 3 && code < 0x800) ||
        (len == 4 && code < 0x10000) || code > 0x10FFFF ||
        (code >= 0xD800 && code <= 0xDFFF)) {
      return false;
    }
    i += len;
  }
  return true;
}

}  // namespace treeconv
