#pragma once

#include "lessarb/bench.hpp"
#include "lessarb/combinators.hpp"
#include "lessarb/cost.hpp"
#include "lessarb/fixtures.hpp"
#include "lessarb/generator.hpp"
#include "lessarb/generic.hpp"
#include "lessarb/instances.hpp"
#include "lessarb/laws.hpp"
#include "lessarb/shape.hpp"
