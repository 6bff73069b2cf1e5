#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "morselab/errors.hpp"
#include "morselab/labelled_graph.hpp"
#include "morselab/rational.hpp"
#include "morselab/word.hpp"

namespace morselab {

enum class Family { Free, FreeAbelian, Raag, ClassicalSC, GraphicalSC };

std::string family_name(Family f);

// A group presentation from one of the supported families, with enough
// derived data to solve the word problem at ball scale. Immutable after
// construction; all operations are pure.
class GroupSpec {
public:
    static constexpr std::size_t kMaxGenerators = 120;

    Family family = Family::Free;
    std::vector<std::string> generators;

    // Raag: commutation adjacency over generator indices (simple graph).
    std::vector<std::vector<bool>> raag_adj;

    // ClassicalSC: relators as given (cyclically reduced).
    std::vector<Word> relators;
    Rational lambda{0, 1};

    // GraphicalSC: the defining labelled graph and the cycle-length cap used
    // to derive the internal relator set (0 = per-component 2*girth default).
    LabelledGraph graph;
    int graphical_cycle_length_cap = 0;
    std::size_t graphical_cycle_cap = 100000;

    int generator_count() const { return static_cast<int>(generators.size()); }
    int letter_count() const { return 2 * generator_count(); }
    bool commutes(int gen_a, int gen_b) const { return raag_adj[gen_a][gen_b]; }

    // Derived for SC families: all cyclic rotations of every internal relator
    // and of its inverse, deduplicated and sorted.
    const std::vector<Word>& symmetrized_relators() const { return symm_relators_; }
    // Internal relator list (classical: as given; graphical: simple-cycle labels).
    const std::vector<Word>& internal_relators() const { return internal_relators_; }

    void finalize(); // validates and builds derived data

    // --- word problem -----------------------------------------------------
    Word normal_form(const Word& w) const;
    bool is_trivial(const Word& w) const;

    // Dehn reduction: leftmost-longest replacement of any subword that is
    // strictly more than half of a symmetrized relator by the inverse of the
    // complement, interleaved with free reduction, to a fixpoint.
    Word dehn_reduce(const Word& w) const;

    // --- text formats ------------------------------------------------------
    int generator_index(const std::string& name) const; // -1 when unknown
    bool compact_names() const; // all single lowercase ASCII letters
    Word word_from_text(const std::string& text) const;
    std::string word_to_text(const Word& w) const;
    std::string letter_name(Letter l) const;

private:
    std::vector<Word> internal_relators_;
    std::vector<Word> symm_relators_;
    // half-swap lookup: for even-length symmetrized relators, first half -> complement inverse
    std::vector<std::pair<Word, Word>> half_swaps_;
    // symmetrized relators bucketed by first letter for fast suffix scans
    std::vector<std::vector<int32_t>> relators_by_first_;

    Word raag_normal_form(const Word& w) const;
    Word abelian_normal_form(const Word& w) const;
    Word sc_canonical_form(const Word& w) const;

    friend struct ScClosure;
};

GroupSpec parse_spec(const std::string& text);
GroupSpec parse_spec_file(const std::string& path);

} // namespace morselab
