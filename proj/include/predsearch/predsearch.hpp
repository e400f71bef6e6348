#pragma once

#include "predsearch/embedding.hpp"
#include "predsearch/errors.hpp"
#include "predsearch/experiment.hpp"
#include "predsearch/explore.hpp"
#include "predsearch/families.hpp"
#include "predsearch/graph.hpp"
#include "predsearch/instance.hpp"
#include "predsearch/io.hpp"
#include "predsearch/plan.hpp"
#include "predsearch/prediction.hpp"
#include "predsearch/rng.hpp"
#include "predsearch/steiner.hpp"
#include "predsearch/tour.hpp"
#include "predsearch/verify.hpp"
