#pragma once

#include "padicprec/errors.hpp"
#include "padicprec/padic.hpp"
#include "padicprec/matrix.hpp"
#include "padicprec/polyring.hpp"
#include "padicprec/oracle.hpp"
#include "padicprec/matops.hpp"
#include "padicprec/compact.hpp"
#include "padicprec/precision.hpp"
#include "padicprec/experiment.hpp"
#include "padicprec/io.hpp"
