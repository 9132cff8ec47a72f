#include "orw/terms.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

namespace orw {
namespace {

struct Table {
    std::mutex mu;
    std::deque<std::string> names;
    std::unordered_map<std::string, SymbolId> ids;

    SymbolId intern(std::string_view name) {
        std::lock_guard lock(mu);
        auto it = ids.find(std::string(name));
        if (it != ids.end()) return it->second;
        auto id = static_cast<SymbolId>(names.size());
        names.emplace_back(name);
        ids.emplace(names.back(), id);
        return id;
    }
    std::optional<SymbolId> find(std::string_view name) {
        std::lock_guard lock(mu);
        auto it = ids.find(std::string(name));
        if (it == ids.end()) return std::nullopt;
        return it->second;
    }
    const std::string& name(SymbolId id) {
        std::lock_guard lock(mu);
        if (id >= names.size()) throw std::out_of_range("unknown symbol id");
        return names[id];
    }
};

Table& generators() {
    static Table t;
    return t;
}
Table& operators() {
    static Table t;
    return t;
}

}  // namespace

SymbolId intern_generator(std::string_view name) { return generators().intern(name); }
SymbolId intern_operator(std::string_view name) { return operators().intern(name); }
std::optional<SymbolId> find_generator(std::string_view name) { return generators().find(name); }
std::optional<SymbolId> find_operator(std::string_view name) { return operators().find(name); }
const std::string& generator_name(SymbolId id) { return generators().name(id); }
const std::string& operator_name(SymbolId id) { return operators().name(id); }

}  // namespace orw
