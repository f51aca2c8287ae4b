#pragma once

// Minimal non-validating XML reader, enough for XES documents: elements,
// attributes, comments, processing instructions, CDATA, DOCTYPE and the
// predefined/numeric entities. Text content is discarded.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "devmine/common.hpp"

namespace devmine::xml {

struct Node {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Node> children;
  std::size_t line = 0;

  const std::string* attribute(std::string_view key) const {
    for (const auto& [k, v] : attributes) {
      if (k == key) return &v;
    }
    return nullptr;
  }
};

namespace detail {

inline void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Reader {
 public:
  explicit Reader(std::string_view doc) : doc_(doc) {}

  Node parse_document() {
    if (doc_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
    skip_misc();
    if (!at('<')) fail("expected root element");
    Node root = parse_element();
    skip_misc();
    if (pos_ < doc_.size()) fail("content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError("XML: " + msg, line_); }

  bool at(char c) const { return pos_ < doc_.size() && doc_[pos_] == c; }
  bool starts(std::string_view s) const { return doc_.substr(pos_, s.size()) == s; }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < doc_.size(); ++i, ++pos_) {
      if (doc_[pos_] == '\n') ++line_;
    }
  }

  void skip_ws() {
    while (pos_ < doc_.size() && (doc_[pos_] == ' ' || doc_[pos_] == '\t' || doc_[pos_] == '\r' || doc_[pos_] == '\n')) {
      advance();
    }
  }

  void skip_until(std::string_view terminator, const char* what) {
    while (pos_ < doc_.size() && !starts(terminator)) advance();
    if (pos_ >= doc_.size()) fail(std::string("unterminated ") + what);
    advance(terminator.size());
  }

  // Whitespace, comments, processing instructions and DOCTYPE outside the root.
  void skip_misc() {
    for (;;) {
      skip_ws();
      if (starts("<?")) {
        skip_until("?>", "processing instruction");
      } else if (starts("<!--")) {
        skip_until("-->", "comment");
      } else if (starts("<!DOCTYPE")) {
        int depth = 0;
        while (pos_ < doc_.size()) {
          if (at('[')) ++depth;
          if (at(']')) --depth;
          if (at('>') && depth == 0) break;
          advance();
        }
        if (pos_ >= doc_.size()) fail("unterminated DOCTYPE");
        advance();
      } else {
        return;
      }
    }
  }

  static bool name_char(char c) {
    return !(c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '/' || c == '>' || c == '=' || c == '<' ||
             c == '"' || c == '\'');
  }

  std::string parse_name() {
    const std::size_t start = pos_;
    while (pos_ < doc_.size() && name_char(doc_[pos_])) advance();
    if (pos_ == start) fail("expected a name");
    return std::string(doc_.substr(start, pos_ - start));
  }

  std::string decode_entity() {
    // pos_ is at '&'
    const std::size_t semi = doc_.find(';', pos_);
    if (semi == std::string_view::npos || semi - pos_ > 12) fail("malformed entity reference");
    const std::string_view ent = doc_.substr(pos_ + 1, semi - pos_ - 1);
    std::string out;
    if (ent == "lt") out = "<";
    else if (ent == "gt") out = ">";
    else if (ent == "amp") out = "&";
    else if (ent == "quot") out = "\"";
    else if (ent == "apos") out = "'";
    else if (!ent.empty() && ent[0] == '#') {
      std::uint32_t cp = 0;
      try {
        cp = (ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X'))
                 ? static_cast<std::uint32_t>(std::stoul(std::string(ent.substr(2)), nullptr, 16))
                 : static_cast<std::uint32_t>(std::stoul(std::string(ent.substr(1)), nullptr, 10));
      } catch (const std::exception&) {
        fail("bad character reference");
      }
      append_utf8(out, cp);
    } else {
      fail("unknown entity &" + std::string(ent) + ";");
    }
    advance(semi - pos_ + 1);
    return out;
  }

  std::string parse_attribute_value() {
    if (!at('"') && !at('\'')) fail("expected quoted attribute value");
    const char quote = doc_[pos_];
    advance();
    std::string out;
    while (pos_ < doc_.size() && doc_[pos_] != quote) {
      if (doc_[pos_] == '<') fail("'<' in attribute value");
      if (doc_[pos_] == '&') {
        out += decode_entity();
      } else {
        out += doc_[pos_];
        advance();
      }
    }
    if (pos_ >= doc_.size()) fail("unterminated attribute value");
    advance();
    return out;
  }

  Node parse_element() {
    Node node;
    node.line = line_;
    advance();  // '<'
    node.name = parse_name();
    for (;;) {
      skip_ws();
      if (starts("/>")) {
        advance(2);
        return node;
      }
      if (at('>')) {
        advance();
        break;
      }
      if (pos_ >= doc_.size()) fail("unterminated start tag <" + node.name + ">");
      std::string key = parse_name();
      skip_ws();
      if (!at('=')) fail("expected '=' after attribute " + key);
      advance();
      skip_ws();
      node.attributes.emplace_back(std::move(key), parse_attribute_value());
    }
    // content
    for (;;) {
      if (pos_ >= doc_.size()) fail("missing end tag </" + node.name + ">");
      if (starts("</")) {
        advance(2);
        const std::string closing = parse_name();
        if (closing != node.name) fail("end tag </" + closing + "> does not match <" + node.name + ">");
        skip_ws();
        if (!at('>')) fail("malformed end tag");
        advance();
        return node;
      }
      if (starts("<!--")) {
        skip_until("-->", "comment");
      } else if (starts("<![CDATA[")) {
        skip_until("]]>", "CDATA section");
      } else if (starts("<?")) {
        skip_until("?>", "processing instruction");
      } else if (at('<')) {
        node.children.push_back(parse_element());
      } else if (at('&')) {
        decode_entity();
      } else {
        advance();
      }
    }
  }

  std::string_view doc_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace detail

inline Node parse(std::string_view document) { return detail::Reader(document).parse_document(); }

inline std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace devmine::xml
