#pragma once

#include "cvswap/quadrature.hpp"
#include "cvswap/register.hpp"
#include "cvswap/protocol.hpp"
#include "cvswap/criteria.hpp"
#include "cvswap/scenario.hpp"
#include "cvswap/sweep.hpp"
#include "cvswap/verify.hpp"
