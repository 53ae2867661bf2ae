#pragma once

#include "chainstab/charge.hpp"
#include "chainstab/chern.hpp"
#include "chainstab/errors.hpp"
#include "chainstab/exc_config.hpp"
#include "chainstab/genericity.hpp"
#include "chainstab/linalg.hpp"
#include "chainstab/ns_model.hpp"
#include "chainstab/rational.hpp"
#include "chainstab/support.hpp"
#include "chainstab/walls.hpp"
