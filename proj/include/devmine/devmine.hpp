#pragma once

#include "devmine/common.hpp"
#include "devmine/log_model.hpp"
#include "devmine/xes.hpp"
#include "devmine/labeling.hpp"
#include "devmine/sequential.hpp"
#include "devmine/declare.hpp"
#include "devmine/apriori.hpp"
#include "devmine/declare_discovery.hpp"
#include "devmine/feature_matrix.hpp"
#include "devmine/features.hpp"
#include "devmine/rules.hpp"
#include "devmine/decision_tree.hpp"
#include "devmine/ripper.hpp"
#include "devmine/metrics.hpp"
#include "devmine/experiment.hpp"
#include "devmine/synthgen.hpp"
#include "devmine/config.hpp"
#include "devmine/pipeline.hpp"
