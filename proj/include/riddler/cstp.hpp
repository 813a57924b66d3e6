#pragma once

#include "riddler/cstp/agreement.hpp"
#include "riddler/cstp/count_oracle.hpp"
#include "riddler/cstp/external_oracle.hpp"
#include "riddler/cstp/preference.hpp"
#include "riddler/cstp/template.hpp"
