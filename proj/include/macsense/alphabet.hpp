#pragma once

#include <string>
#include <vector>

#include "macsense/errors.hpp"

namespace macsense {

// A named finite symbol set. Symbol order is significant: tensors are indexed
// by symbol position and estimator tie-breaks resolve toward lower indices.
struct Alphabet {
    std::string name;
    std::vector<std::string> symbols;

    Alphabet() = default;
    Alphabet(std::string name_, std::vector<std::string> symbols_)
        : name(std::move(name_)), symbols(std::move(symbols_)) {
        if (symbols.empty()) throw ShapeError("alphabet '" + name + "' must have at least one symbol");
        for (std::size_t i = 0; i < symbols.size(); ++i)
            for (std::size_t j = i + 1; j < symbols.size(); ++j)
                if (symbols[i] == symbols[j])
                    throw NameError("alphabet '" + name + "' repeats symbol '" + symbols[i] + "'");
    }

    std::size_t size() const { return symbols.size(); }

    int index_of(const std::string& symbol) const {
        for (std::size_t i = 0; i < symbols.size(); ++i)
            if (symbols[i] == symbol) return static_cast<int>(i);
        throw NameError("alphabet '" + name + "' has no symbol '" + symbol + "'");
    }

    static Alphabet binary(const std::string& name) { return Alphabet(name, {"0", "1"}); }
    static Alphabet singleton(const std::string& name) { return Alphabet(name, {"0"}); }
    static Alphabet numeric(const std::string& name, std::size_t n) {
        std::vector<std::string> s;
        s.reserve(n);
        for (std::size_t i = 0; i < n; ++i) s.push_back(std::to_string(i));
        return Alphabet(name, std::move(s));
    }

    bool operator==(const Alphabet& o) const { return name == o.name && symbols == o.symbols; }
};

}  // namespace macsense
