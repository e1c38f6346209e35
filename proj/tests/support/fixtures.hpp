#pragma once

#include <string>

#include "hyptype/graph.hpp"

namespace fixtures {

using hyptype::GraphBuilder;
using hyptype::Rational;
using hyptype::TropicalCurve;

inline TropicalCurve theta(Rational a = 1, Rational b = 1, Rational c = 1) {
  GraphBuilder g;
  g.add_vertex("x");
  g.add_vertex("y");
  g.add_edge("e1", "x", "y", a);
  g.add_edge("e2", "x", "y", b);
  g.add_edge("e3", "x", "y", c);
  return g.curve();
}

inline TropicalCurve k4() {
  GraphBuilder g;
  for (int v = 0; v < 4; ++v) g.add_vertex("v" + std::to_string(v));
  int e = 0;
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) g.add_edge("e" + std::to_string(e++), a, b);
  }
  return g.curve();
}

// Three vertices, each pair joined by two edges.
inline TropicalCurve l3() {
  GraphBuilder g;
  g.add_vertex("a");
  g.add_vertex("b");
  g.add_vertex("c");
  g.add_edge("ab1", "a", "b");
  g.add_edge("ab2", "a", "b");
  g.add_edge("bc1", "b", "c");
  g.add_edge("bc2", "b", "c");
  g.add_edge("ca1", "c", "a");
  g.add_edge("ca2", "c", "a");
  return g.curve();
}

// u-v doubled, v-w doubled, u-w single.
inline TropicalCurve b2() {
  GraphBuilder g;
  g.add_vertex("u");
  g.add_vertex("v");
  g.add_vertex("w");
  g.add_edge("uv1", "u", "v");
  g.add_edge("uv2", "u", "v");
  g.add_edge("vw1", "v", "w");
  g.add_edge("vw2", "v", "w");
  g.add_edge("uw", "u", "w");
  return g.curve();
}

// Two vertices joined by parallel edges e, f, with a loop at each vertex.
inline TropicalCurve fig1(Rational e, Rational f, Rational loop_u = 1, Rational loop_v = 1) {
  GraphBuilder g;
  g.add_vertex("u");
  g.add_vertex("v");
  g.add_edge("e", "u", "v", e);
  g.add_edge("f", "u", "v", f);
  g.add_edge("lu", "u", "u", loop_u);
  g.add_edge("lv", "v", "v", loop_v);
  return g.curve();
}

inline TropicalCurve cycle(int n, Rational length = 1) {
  GraphBuilder g;
  for (int v = 0; v < n; ++v) g.add_vertex("v" + std::to_string(v));
  for (int v = 0; v < n; ++v) g.add_edge("e" + std::to_string(v), v, (v + 1) % n, length);
  return g.curve();
}

// Two loops joined by a bridge.
inline TropicalCurve dumbbell() {
  GraphBuilder g;
  g.add_vertex("a");
  g.add_vertex("b");
  g.add_edge("la", "a", "a");
  g.add_edge("bar", "a", "b");
  g.add_edge("lb", "b", "b");
  return g.curve();
}

// Two triangles joined by a perfect matching.
inline TropicalCurve prism() {
  GraphBuilder g;
  for (int v = 0; v < 6; ++v) g.add_vertex("p" + std::to_string(v));
  g.add_edge("t0", 0, 1);
  g.add_edge("t1", 1, 2);
  g.add_edge("t2", 2, 0);
  g.add_edge("s0", 3, 4);
  g.add_edge("s1", 4, 5);
  g.add_edge("s2", 5, 3);
  g.add_edge("m0", 0, 3);
  g.add_edge("m1", 1, 4);
  g.add_edge("m2", 2, 5);
  return g.curve();
}

}  // namespace fixtures
