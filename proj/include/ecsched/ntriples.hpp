#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ecsched/errors.hpp"
#include "ecsched/rdf_graph.hpp"
#include "ecsched/term.hpp"

namespace ecsched {
namespace detail {

inline bool nt_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

class LineScanner {
public:
    LineScanner(std::string_view text, std::size_t line_no) : text_(text), line_(line_no) {}

    void skip_space() {
        while (pos_ < text_.size() && nt_space(text_[pos_])) ++pos_;
    }

    bool at_end() {
        skip_space();
        return pos_ >= text_.size();
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("line " + std::to_string(line_) + ": " + what, line_, pos_);
    }

    Term term() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of line");
        char c = text_[pos_];
        if (c == '<') return iri_term();
        if (c == '"') return literal_term();
        fail(std::string("expected '<' or '\"', got '") + c + "'");
    }

    Term iri_term() {
        ++pos_;  // '<'
        std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != '>') ++pos_;
        if (pos_ >= text_.size()) fail("unterminated IRI");
        if (pos_ == start) fail("empty IRI");
        Term t = iri(std::string(text_.substr(start, pos_ - start)));
        ++pos_;  // '>'
        return t;
    }

    Term literal_term() {
        ++pos_;  // '"'
        std::string value;
        while (pos_ < text_.size() && text_[pos_] != '"') {
            char c = text_[pos_];
            if (c == '\\') {
                ++pos_;
                if (pos_ >= text_.size()) fail("dangling escape in literal");
                switch (text_[pos_]) {
                    case '"': value += '"'; break;
                    case '\\': value += '\\'; break;
                    case 'n': value += '\n'; break;
                    case 'r': value += '\r'; break;
                    case 't': value += '\t'; break;
                    default: fail("unknown escape in literal");
                }
            } else {
                value += c;
            }
            ++pos_;
        }
        if (pos_ >= text_.size()) fail("unterminated literal");
        ++pos_;  // '"'
        return literal(std::move(value));
    }

    void expect_dot_and_end() {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != '.') fail("expected '.'");
        ++pos_;
        skip_space();
        if (pos_ < text_.size()) fail("trailing content after '.'");
    }

private:
    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the N-Triples subset: one `<s> <p> <o> .` statement per line,
/// literals allowed in subject/object position, '#' lines are comments.
/// Duplicate triples collapse; line order does not affect the result.
inline RdfGraph parse_ntriples(std::istream& in) {
    std::vector<Triple> triples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        detail::LineScanner scan(line, line_no);
        Term s = scan.term();
        scan.skip_space();
        if (scan.peek() != '<') scan.fail("predicate must be an IRI");
        Term p = scan.iri_term();
        Term o = scan.term();
        scan.expect_dot_and_end();
        triples.push_back({std::move(s), std::move(p), std::move(o)});
    }
    return RdfGraph(std::move(triples));
}

inline RdfGraph parse_ntriples(const std::string& text) {
    std::istringstream in(text);
    return parse_ntriples(in);
}

}  // namespace ecsched
