#pragma once

#include "acirc/circuit.hpp"
#include "acirc/error.hpp"
#include "acirc/families.hpp"
#include "acirc/format.hpp"
#include "acirc/lowerbound.hpp"
#include "acirc/oracle.hpp"
#include "acirc/properties.hpp"
#include "acirc/rational.hpp"
#include "acirc/transforms.hpp"
