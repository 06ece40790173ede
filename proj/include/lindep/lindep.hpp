#pragma once

#include "lindep/numerics.hpp"
#include "lindep/rational.hpp"
#include "lindep/groups.hpp"
#include "lindep/functions.hpp"
#include "lindep/representations.hpp"
#include "lindep/matrix_coefficient.hpp"
#include "lindep/certificate.hpp"
#include "lindep/coefficients.hpp"
#include "lindep/dependency.hpp"
#include "lindep/groupring.hpp"
#include "lindep/literals.hpp"
#include "lindep/report.hpp"
#include "lindep/config.hpp"
#include "lindep/suites.hpp"
