#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "qnet/net.hpp"

namespace qnet {

/// Process term of the free Q-category on a net. Immutable and cheap to copy.
///
/// `perm` only appears in symmetric terms: it permutes the letters of a word
/// object, sending letter i of the source to position map[i] of the target.
class MorTerm {
  public:
    enum class Kind { gen, ident, comp, combine, invert, perm };

    static MorTerm gen(Name transition);
    static MorTerm ident(FreeElem object);
    static MorTerm comp(MorTerm after, MorTerm before);
    static MorTerm combine(std::vector<MorTerm> args);
    static MorTerm combine(MorTerm left, MorTerm right);
    static MorTerm invert(MorTerm arg);
    static MorTerm perm(FreeElem word, std::vector<std::size_t> map);

    Kind kind() const { return node_->kind; }
    const Name& name() const { return node_->name; }
    const FreeElem& object() const { return node_->object; }
    /// comp: {after, before}; combine: operands; invert: {arg}.
    const std::vector<MorTerm>& args() const { return node_->args; }
    const std::vector<std::size_t>& map() const { return node_->map; }

    /// Number of Gen leaves.
    std::size_t generator_count() const;

    friend bool operator==(const MorTerm& a, const MorTerm& b);

  private:
    struct Node {
        Kind kind = Kind::ident;
        Name name;
        FreeElem object;
        std::vector<MorTerm> args;
        std::vector<std::size_t> map;
    };
    explicit MorTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

/// Source and target objects; throw `ill_typed` for badly composed terms and
/// `unsupported_theory` for `invert` outside group theories.
FreeElem mor_src(const MorTerm& term, const QNet& net);
FreeElem mor_tgt(const MorTerm& term, const QNet& net);

std::string to_display(const MorTerm& term);

} // namespace qnet
