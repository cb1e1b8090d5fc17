#ifndef FSCMM_FSCMM_HPP
#define FSCMM_FSCMM_HPP

// Umbrella header for the fscmm text-categorization toolkit.

#include "fscmm/cli.hpp"
#include "fscmm/corpus.hpp"
#include "fscmm/errors.hpp"
#include "fscmm/eval.hpp"
#include "fscmm/features.hpp"
#include "fscmm/fuzzy.hpp"
#include "fscmm/svm.hpp"
#include "fscmm/text_prep.hpp"

#endif
