#pragma once

// Umbrella header for the whole toolkit.

#include "dfrm/bitset.hpp"
#include "dfrm/cli.hpp"
#include "dfrm/closure.hpp"
#include "dfrm/conditions.hpp"
#include "dfrm/coproduct.hpp"
#include "dfrm/dframe.hpp"
#include "dfrm/errors.hpp"
#include "dfrm/frame.hpp"
#include "dfrm/poset.hpp"
#include "dfrm/presentation.hpp"
#include "dfrm/search.hpp"
#include "dfrm/semilattice.hpp"
#include "dfrm/standard.hpp"
#include "dfrm/text.hpp"
