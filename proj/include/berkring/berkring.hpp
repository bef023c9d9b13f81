#pragma once

#include "berkring/real.hpp"
#include "berkring/base_ring.hpp"
#include "berkring/monomial.hpp"
#include "berkring/poly.hpp"
#include "berkring/parse.hpp"
#include "berkring/graded.hpp"
#include "berkring/groebner.hpp"
#include "berkring/linalg.hpp"
#include "berkring/seminorm.hpp"
#include "berkring/presentation.hpp"
#include "berkring/point.hpp"
#include "berkring/spectrum.hpp"
#include "berkring/affinoid.hpp"
#include "berkring/coverings.hpp"
#include "berkring/tate.hpp"
#include "berkring/profile.hpp"
#include "berkring/json_io.hpp"
