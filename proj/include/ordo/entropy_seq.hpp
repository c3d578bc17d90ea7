#pragma once

#include <span>
#include <string_view>

#include "ordo/corpus.hpp"
#include "ordo/lda.hpp"
#include "ordo/ordering.hpp"

namespace ordo {

// Shannon entropy, natural log, 0·ln 0 = 0. Validates the distribution.
double entropy(std::span<const double> dist);
// KL divergence to the uniform distribution over the same support:
// ln p − entropy(dist).
double kld_uniform(std::span<const double> dist);

enum class DivergenceKind { entropy, kld_uniform };
enum class ExtremeDirection { most_first, least_first };

DivergenceKind divergence_from_string(std::string_view name);
std::string_view to_string(DivergenceKind kind);
ExtremeDirection direction_from_string(std::string_view name);
std::string_view to_string(ExtremeDirection direction);

// Iterative selection: fit a topic model on the remaining documents, score
// each by the divergence of its topic distribution, take the arg-extreme,
// remove it, refit. The last document is appended without a fit.
Ordering entropy_sequence(const Corpus& corpus, DivergenceKind kind,
                          ExtremeDirection direction, const LdaConfig& config);

Ordering seq_by_entropy(const Corpus& corpus, ExtremeDirection direction,
                        const LdaConfig& config);
Ordering seq_by_kld(const Corpus& corpus, ExtremeDirection direction,
                    const LdaConfig& config);

}  // namespace ordo
