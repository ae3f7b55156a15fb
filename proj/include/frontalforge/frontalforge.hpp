#pragma once

#include "analysis.hpp"
#include "catalog.hpp"
#include "errors.hpp"
#include "frontal.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "parallel.hpp"
#include "silhouette.hpp"
#include "suites.hpp"
#include "transforms.hpp"
