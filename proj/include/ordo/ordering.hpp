#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ordo {

struct TraceStep {
  int chosen = 0;    // gold index of the selected document
  double score = 0.0;
  int fitted_topics = 0;  // 0 when the step involved no topic fit
  std::vector<std::pair<int, double>> candidate_scores;  // gold index -> score
};

struct Ordering {
  std::string method;
  std::vector<int> positions;  // gold indices in predicted order (the sequence B)
  std::vector<TraceStep> trace;
};

}  // namespace ordo
