#pragma once

#include "zss/classifier.hpp"
#include "zss/corpus.hpp"
#include "zss/csv.hpp"
#include "zss/domain_analysis.hpp"
#include "zss/entailment.hpp"
#include "zss/error.hpp"
#include "zss/evaluation.hpp"
#include "zss/label_space.hpp"
#include "zss/score_cache.hpp"
#include "zss/scorer.hpp"
#include "zss/subset_search.hpp"
#include "zss/text.hpp"
#include "zss/wordnet.hpp"
