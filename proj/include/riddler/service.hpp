#pragma once

#include "riddler/service/config.hpp"
#include "riddler/service/credentials.hpp"
#include "riddler/service/game.hpp"
#include "riddler/service/http.hpp"
#include "riddler/service/journal.hpp"
#include "riddler/service/setup.hpp"
