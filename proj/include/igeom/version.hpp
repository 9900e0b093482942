#pragma once

#define IGEOM_VERSION "0.1.0"
