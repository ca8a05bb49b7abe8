#pragma once

#include "tadpost/composition.hpp"
#include "tadpost/decode.hpp"
#include "tadpost/errors.hpp"
#include "tadpost/evaluation.hpp"
#include "tadpost/fusion.hpp"
#include "tadpost/interval.hpp"
#include "tadpost/reliability.hpp"
#include "tadpost/simulation.hpp"
#include "tadpost/suppression.hpp"
#include "tadpost/timeline.hpp"
#include "tadpost/io/config.hpp"
#include "tadpost/io/pipeline.hpp"
#include "tadpost/io/records.hpp"
#include "tadpost/io/scenario_export.hpp"
#include "tadpost/io/submission.hpp"
