#ifndef CBERLAB_GROUP_HPP
#define CBERLAB_GROUP_HPP

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cberlab {

enum class GroupKind { Z, ZPowD, Free };

/// A group element in canonical form. For Z and Z^d the element is its
/// coordinate vector; for free groups it is a freely reduced word, where
/// letter +g stands for the g-th generator and -g for its inverse
/// (generators are numbered from 1).
struct Element {
    std::vector<std::int64_t> coords;
    std::vector<std::int32_t> word;

    bool operator==(const Element&) const = default;

    std::int64_t length() const;

    // Global length-lex order: shorter elements first, ties broken
    // coordinate-lexicographically (negatives first) for abelian groups and
    // letter-lexicographically with inverse letters first for free groups.
    bool operator<(const Element& other) const;
};

struct ModelMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A finite window into the group: the ball B(r), optionally padded to
/// B(r + padding). Operations that right-multiply work on the padded set and
/// report results only on the interior B(r).
struct Window {
    int radius = 0;
    int padding = 0;
    std::vector<Element> elements;  // sorted, the full padded ball

    bool contains(const Element& g) const;
};

/// Canonical models of Z, Z^d and the free group F_k, with exact arithmetic
/// and the fixed global enumeration gamma_0, gamma_1, ... used for all
/// tie-breaking. Values are immutable after construction.
class GroupModel {
public:
    GroupModel(GroupKind kind, int rank);

    /// Config-string form: "Z", "Z^2", "F2", ...
    static GroupModel parse(const std::string& spec);

    GroupKind kind() const { return kind_; }
    int rank() const { return rank_; }
    std::string name() const;

    bool operator==(const GroupModel&) const = default;

    Element identity() const;
    Element mul(const Element& g, const Element& h) const;
    Element inv(const Element& g) const;
    std::int64_t word_length(const Element& g) const { return g.length(); }

    /// Symmetric generating set (generators and their inverses).
    std::vector<Element> generators() const;

    /// All elements of word length <= r, sorted in enumeration order.
    std::vector<Element> ball(int r) const;
    Window window(int radius, int padding = 0) const;

    /// First n terms of the fixed length-lex enumeration; gamma_0 = identity.
    std::vector<Element> enumerate(int n) const;

    std::string to_string(const Element& g) const;
    Element parse_element(const std::string& s) const;

    /// Checks an element is a valid canonical form for this model.
    bool valid(const Element& g) const;

private:
    void require(const Element& g) const;

    GroupKind kind_;
    int rank_;
};

}  // namespace cberlab

#endif
