#pragma once

#include "riddler/corpus.hpp"
#include "riddler/cstp.hpp"
#include "riddler/error.hpp"
#include "riddler/pairgen.hpp"
#include "riddler/random.hpp"
#include "riddler/riddle.hpp"
#include "riddler/scheduler.hpp"
#include "riddler/scoring.hpp"
#include "riddler/stats.hpp"
#include "riddler/types.hpp"
