#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace ecsched {

enum class TermKind : std::uint8_t { Iri, Literal, Variable };

/// An RDF term: an IRI (stored without angle brackets), a literal lexical
/// form, or a variable name (stored without the leading '?').
struct Term {
    TermKind kind = TermKind::Iri;
    std::string text;

    bool is_variable() const { return kind == TermKind::Variable; }
    bool is_constant() const { return kind != TermKind::Variable; }

    friend bool operator==(const Term&, const Term&) = default;
    friend auto operator<=>(const Term&, const Term&) = default;
};

inline Term iri(std::string text) { return {TermKind::Iri, std::move(text)}; }
inline Term literal(std::string text) { return {TermKind::Literal, std::move(text)}; }
inline Term variable(std::string name) { return {TermKind::Variable, std::move(name)}; }

/// A ground triple; no component may be a variable.
struct Triple {
    Term subject;
    Term predicate;
    Term object;

    friend bool operator==(const Triple&, const Triple&) = default;
    friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// One edge of a query graph; any position may be a variable.
struct TriplePattern {
    Term subject;
    Term predicate;
    Term object;

    friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
    friend auto operator<=>(const TriplePattern&, const TriplePattern&) = default;
};

namespace detail {

inline void append_escaped_literal(std::string& out, const std::string& text) {
    out += '"';
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
}

}  // namespace detail

/// Renders a term in the source syntax: <iri>, "literal" or ?name.
inline std::string render_term(const Term& t) {
    std::string out;
    switch (t.kind) {
        case TermKind::Iri:
            out += '<';
            out += t.text;
            out += '>';
            break;
        case TermKind::Literal:
            detail::append_escaped_literal(out, t.text);
            break;
        case TermKind::Variable:
            out += '?';
            out += t.text;
            break;
    }
    return out;
}

struct TermHash {
    std::size_t operator()(const Term& t) const {
        std::size_t h = std::hash<std::string>{}(t.text);
        return h * 3 + static_cast<std::size_t>(t.kind);
    }
};

}  // namespace ecsched
