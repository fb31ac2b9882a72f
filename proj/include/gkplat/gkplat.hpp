#pragma once

#include "gkplat/errors.hpp"
#include "gkplat/exact.hpp"
#include "gkplat/lattice.hpp"
#include "gkplat/normal_form.hpp"
#include "gkplat/gkp_code.hpp"
#include "gkplat/clifford.hpp"
#include "gkplat/transport.hpp"
