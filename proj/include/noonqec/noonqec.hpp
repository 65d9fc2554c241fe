#pragma once

#include "noonqec/codes.hpp"
#include "noonqec/comms.hpp"
#include "noonqec/fock.hpp"
#include "noonqec/kl.hpp"
#include "noonqec/loss.hpp"
#include "noonqec/optics.hpp"
#include "noonqec/prep.hpp"
#include "noonqec/util.hpp"
