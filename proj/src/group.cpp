#include "cberlab/group.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <sstream>

namespace cberlab {

std::int64_t Element::length() const {
    if (!word.empty()) return static_cast<std::int64_t>(word.size());
    std::int64_t n = 0;
    for (auto c : coords) n += std::llabs(c);
    return n;
}

namespace {

// Letter key: a^-1 < a < b^-1 < b < ...
int letter_key(std::int32_t l) {
    return l > 0 ? 2 * (l - 1) + 1 : 2 * (-l - 1);
}

}  // namespace

bool Element::operator<(const Element& other) const {
    auto la = length(), lb = other.length();
    if (la != lb) return la < lb;
    if (!word.empty() || !other.word.empty()) {
        const auto& a = word;
        const auto& b = other.word;
        return std::lexicographical_compare(
            a.begin(), a.end(), b.begin(), b.end(),
            [](std::int32_t x, std::int32_t y) { return letter_key(x) < letter_key(y); });
    }
    return coords < other.coords;
}

bool Window::contains(const Element& g) const {
    return std::binary_search(elements.begin(), elements.end(), g);
}

GroupModel::GroupModel(GroupKind kind, int rank) : kind_(kind), rank_(rank) {
    if (rank < 1) throw std::invalid_argument("group rank must be >= 1");
    if (kind == GroupKind::Z) rank_ = 1;
}

GroupModel GroupModel::parse(const std::string& spec) {
    if (spec == "Z") return GroupModel(GroupKind::Z, 1);
    if (spec.rfind("Z^", 0) == 0) {
        int d = std::stoi(spec.substr(2));
        return GroupModel(d == 1 ? GroupKind::Z : GroupKind::ZPowD, d);
    }
    if (spec.size() >= 2 && spec[0] == 'F') {
        int k = std::stoi(spec.substr(1));
        return GroupModel(GroupKind::Free, k);
    }
    throw std::invalid_argument("unknown group spec: " + spec);
}

std::string GroupModel::name() const {
    switch (kind_) {
        case GroupKind::Z: return "Z";
        case GroupKind::ZPowD: return "Z^" + std::to_string(rank_);
        case GroupKind::Free: return "F" + std::to_string(rank_);
    }
    return "?";
}

Element GroupModel::identity() const {
    Element e;
    if (kind_ != GroupKind::Free) e.coords.assign(rank_, 0);
    return e;
}

bool GroupModel::valid(const Element& g) const {
    if (kind_ != GroupKind::Free) {
        if (!g.word.empty()) return false;
        return static_cast<int>(g.coords.size()) == rank_;
    }
    if (!g.coords.empty()) return false;
    for (size_t i = 0; i < g.word.size(); ++i) {
        auto l = g.word[i];
        if (l == 0 || std::abs(l) > rank_) return false;
        if (i > 0 && g.word[i - 1] == -l) return false;  // not reduced
    }
    return true;
}

void GroupModel::require(const Element& g) const {
    if (!valid(g)) throw ModelMismatchError("element does not belong to " + name());
}

Element GroupModel::mul(const Element& g, const Element& h) const {
    require(g);
    require(h);
    Element r;
    if (kind_ != GroupKind::Free) {
        r.coords.resize(rank_);
        for (int i = 0; i < rank_; ++i) r.coords[i] = g.coords[i] + h.coords[i];
        return r;
    }
    r.word = g.word;
    for (auto l : h.word) {
        if (!r.word.empty() && r.word.back() == -l)
            r.word.pop_back();
        else
            r.word.push_back(l);
    }
    return r;
}

Element GroupModel::inv(const Element& g) const {
    require(g);
    Element r;
    if (kind_ != GroupKind::Free) {
        r.coords.resize(rank_);
        for (int i = 0; i < rank_; ++i) r.coords[i] = -g.coords[i];
        return r;
    }
    r.word.assign(g.word.rbegin(), g.word.rend());
    for (auto& l : r.word) l = -l;
    return r;
}

std::vector<Element> GroupModel::generators() const {
    std::vector<Element> gens;
    for (int i = 0; i < rank_; ++i) {
        for (int sign : {-1, +1}) {
            Element g;
            if (kind_ != GroupKind::Free) {
                g.coords.assign(rank_, 0);
                g.coords[i] = sign;
            } else {
                g.word.push_back(sign * (i + 1));
            }
            gens.push_back(g);
        }
    }
    std::sort(gens.begin(), gens.end());
    return gens;
}

std::vector<Element> GroupModel::ball(int r) const {
    if (r < 0) throw std::invalid_argument("ball radius must be >= 0");
    std::vector<Element> out{identity()};
    std::vector<Element> frontier = out;
    auto gens = generators();
    for (int step = 0; step < r; ++step) {
        std::vector<Element> next;
        for (const auto& g : frontier) {
            for (const auto& s : gens) {
                Element h = mul(g, s);
                if (h.length() == step + 1) next.push_back(h);
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Window GroupModel::window(int radius, int padding) const {
    Window w;
    w.radius = radius;
    w.padding = padding;
    w.elements = ball(radius + padding);
    return w;
}

std::vector<Element> GroupModel::enumerate(int n) const {
    if (n < 0) throw std::invalid_argument("enumeration length must be >= 0");
    int r = 0;
    std::vector<Element> b = ball(0);
    while (static_cast<int>(b.size()) < n) {
        ++r;
        auto larger = ball(r);
        if (larger.size() == b.size())
            throw std::logic_error("group ball stopped growing");  // unreachable for our models
        b = std::move(larger);
    }
    b.resize(n);
    return b;
}

std::string GroupModel::to_string(const Element& g) const {
    require(g);
    if (kind_ == GroupKind::Z) return std::to_string(g.coords[0]);
    if (kind_ == GroupKind::ZPowD) {
        std::ostringstream os;
        os << '(';
        for (int i = 0; i < rank_; ++i) {
            if (i) os << ',';
            os << g.coords[i];
        }
        os << ')';
        return os.str();
    }
    if (g.word.empty()) return "e";
    std::ostringstream os;
    for (auto l : g.word) {
        os << static_cast<char>('a' + std::abs(l) - 1);
        if (l < 0) os << "^-1";
    }
    return os.str();
}

Element GroupModel::parse_element(const std::string& s) const {
    Element g;
    if (kind_ == GroupKind::Z) {
        g.coords.push_back(std::stoll(s));
        require(g);
        return g;
    }
    if (kind_ == GroupKind::ZPowD) {
        std::string body = s;
        if (!body.empty() && body.front() == '(') body = body.substr(1, body.size() - 2);
        std::istringstream is(body);
        std::string tok;
        while (std::getline(is, tok, ',')) g.coords.push_back(std::stoll(tok));
        require(g);
        return g;
    }
    if (s == "e") return g;
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (c < 'a' || c >= 'a' + rank_)
            throw std::invalid_argument("bad generator letter in " + s);
        std::int32_t l = c - 'a' + 1;
        ++i;
        if (i + 2 < s.size() + 1 && s.compare(i, 3, "^-1") == 0) {
            l = -l;
            i += 3;
        }
        g.word.push_back(l);
    }
    require(g);
    return g;
}

}  // namespace cberlab
