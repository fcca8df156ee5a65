// Copyright 2026 The qpke Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Security-experiment engine: game drivers, built-in adversaries and demos.

#ifndef QPKE_GAMES_H_
#define QPKE_GAMES_H_

#include "qpke/games/base_game.h"
#include "qpke/games/demos.h"
#include "qpke/games/record.h"
#include "qpke/games/recyclable_game.h"
#include "qpke/games/scheme_game.h"

#endif  // QPKE_GAMES_H_
