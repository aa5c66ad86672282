#pragma once

#include "thickmorph/ring.hpp"
#include "thickmorph/parse.hpp"
#include "thickmorph/thick.hpp"
#include "thickmorph/functional.hpp"
#include "thickmorph/hamilton.hpp"
