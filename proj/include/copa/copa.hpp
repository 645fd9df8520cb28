#pragma once

#include "copa/error.hpp"
#include "copa/text.hpp"

#include "copa/kb/dataset.hpp"
#include "copa/kb/invention.hpp"
#include "copa/kb/io.hpp"
#include "copa/kb/stats.hpp"
#include "copa/kb/types.hpp"

#include "copa/text_sim/embedding.hpp"
#include "copa/text_sim/hypergeom.hpp"
#include "copa/text_sim/similarity.hpp"
#include "copa/text_sim/tfidf.hpp"
#include "copa/text_sim/wiki_corpus.hpp"

#include "copa/features/features.hpp"
#include "copa/features/standardizer.hpp"

#include "copa/classifiers/ba.hpp"
#include "copa/classifiers/blacklist.hpp"
#include "copa/classifiers/ensemble.hpp"
#include "copa/classifiers/feature_lr.hpp"
#include "copa/classifiers/knn.hpp"
#include "copa/classifiers/logreg.hpp"
#include "copa/classifiers/methods.hpp"
#include "copa/classifiers/model_io.hpp"
#include "copa/classifiers/naive_bayes.hpp"
#include "copa/classifiers/score_matrix.hpp"
#include "copa/classifiers/w2v.hpp"

#include "copa/eval/curves.hpp"
#include "copa/eval/kappa.hpp"
#include "copa/eval/loo.hpp"
