#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ecsched/errors.hpp"
#include "ecsched/term.hpp"

namespace ecsched {

/// A SPARQL basic graph pattern query. The query graph (vertices = distinct
/// subject/object terms, edges = patterns) is weakly connected; the parser
/// rejects anything else.
struct BgpQuery {
    std::vector<std::string> projected;
    std::vector<TriplePattern> patterns;

    friend bool operator==(const BgpQuery&, const BgpQuery&) = default;
};

namespace detail {

class QueryScanner {
public:
    explicit QueryScanner(std::string_view text) : text_(text) {}

    std::size_t pos() const { return pos_; }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end() {
        skip_space();
        return pos_ >= text_.size();
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("offset " + std::to_string(pos_) + ": " + what, 0, pos_);
    }

    void expect_keyword(std::string_view kw) {
        skip_space();
        if (text_.substr(pos_, kw.size()) != kw) fail("expected '" + std::string(kw) + "'");
        pos_ += kw.size();
    }

    void expect_char(char c) {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool consume_char(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string variable_name() {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != '?') fail("expected '?'");
        ++pos_;
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (pos_ == start) fail("empty variable name");
        return std::string(text_.substr(start, pos_ - start));
    }

    Term term() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of query");
        char c = text_[pos_];
        if (c == '?') return variable(variable_name());
        if (c == '<') {
            ++pos_;
            std::size_t start = pos_;
            while (pos_ < text_.size() && text_[pos_] != '>') ++pos_;
            if (pos_ >= text_.size()) fail("unterminated IRI");
            if (pos_ == start) fail("empty IRI");
            Term t = iri(std::string(text_.substr(start, pos_ - start)));
            ++pos_;
            return t;
        }
        if (c == '"') {
            ++pos_;
            std::string value;
            while (pos_ < text_.size() && text_[pos_] != '"') {
                if (text_[pos_] == '\\') {
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
                    value += text_[pos_];
                }
                ++pos_;
            }
            if (pos_ >= text_.size()) fail("unterminated literal");
            ++pos_;
            return literal(std::move(value));
        }
        fail("expected term");
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Checks weak connectivity of the query graph; on failure throws a
/// ConnectivityError naming the components. Vertices are the distinct
/// subject/object terms (predicate variables label edges, they are not
/// vertices).
inline void check_query_connected(const BgpQuery& q) {
    std::map<Term, std::size_t> index;
    std::vector<Term> verts;
    auto intern = [&](const Term& t) {
        auto [it, fresh] = index.emplace(t, verts.size());
        if (fresh) verts.push_back(t);
        return it->second;
    };
    for (const TriplePattern& tp : q.patterns) {
        intern(tp.subject);
        intern(tp.object);
    }

    std::vector<std::size_t> parent(verts.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const TriplePattern& tp : q.patterns)
        parent[find(index[tp.subject])] = find(index[tp.object]);

    std::map<std::size_t, std::vector<std::string>> components;
    for (std::size_t v = 0; v < verts.size(); ++v)
        components[find(v)].push_back(render_term(verts[v]));
    if (components.size() <= 1) return;

    std::string msg = "query graph is disconnected (" + std::to_string(components.size()) +
                      " components):";
    for (const auto& [root, members] : components) {
        msg += " {";
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (i) msg += ", ";
            msg += members[i];
        }
        msg += "}";
    }
    throw ConnectivityError(msg);
}

/// Parses `SELECT ?v (?v)* WHERE { tp ("." tp)* }` where each tp is three
/// terms and a term is <iri>, "literal" or ?name. Variables may appear in
/// any position, including the predicate.
inline BgpQuery parse_bgp(std::string_view text) {
    detail::QueryScanner scan(text);
    BgpQuery q;

    scan.expect_keyword("SELECT");
    q.projected.push_back(scan.variable_name());
    while (scan.peek() == '?') q.projected.push_back(scan.variable_name());

    scan.expect_keyword("WHERE");
    scan.expect_char('{');
    for (;;) {
        TriplePattern tp;
        tp.subject = scan.term();
        tp.predicate = scan.term();
        tp.object = scan.term();
        q.patterns.push_back(std::move(tp));
        if (!scan.consume_char('.')) break;
    }
    scan.expect_char('}');
    if (!scan.at_end()) scan.fail("trailing content after '}'");

    std::set<std::string> seen;
    for (const TriplePattern& tp : q.patterns)
        for (const Term* t : {&tp.subject, &tp.predicate, &tp.object})
            if (t->is_variable()) seen.insert(t->text);
    for (const std::string& v : q.projected)
        if (!seen.count(v))
            throw ParseError("projected variable ?" + v + " does not occur in any pattern", 0, 0);

    check_query_connected(q);
    return q;
}

}  // namespace ecsched
