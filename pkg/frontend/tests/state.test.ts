import { describe, expect, test } from "vitest";

import { PHASES, phaseByName } from "../src/phases.js";
import {
  applyPhase,
  clampM,
  decodeState,
  defaultState,
  encodeState,
  withWindow,
  type ViewState,
} from "../src/state.js";

describe("phase presets", () => {
  test("ships the eight named periods", () => {
    expect(PHASES).toHaveLength(8);
    expect(PHASES.map((p) => p.name)).toEqual([
      "Pegida", "Tröglitz", "Mediterranean", "Refugee trail", "Heidenau",
      "We can do it", "Limit immigration", "International solutions",
    ]);
  });

  test("preset windows are exact and contiguous over 2015", () => {
    expect(phaseByName("Mediterranean")).toEqual(
      { name: "Mediterranean", from: "2015-04-13", to: "2015-05-31" });
    expect(phaseByName("Limit immigration")).toEqual(
      { name: "Limit immigration", from: "2015-09-28", to: "2015-11-15" });
    expect(PHASES[0].from).toBe("2015-01-01");
    expect(PHASES[7].to).toBe("2015-12-31");
    for (let i = 1; i < PHASES.length; i++) {
      const previousEnd = new Date(PHASES[i - 1].to).getTime();
      const nextStart = new Date(PHASES[i].from).getTime();
      expect(nextStart - previousEnd).toBe(24 * 3600 * 1000);
    }
  });

  test("applyPhase sets the window and remembers the preset", () => {
    const state = applyPhase(defaultState(), "Mediterranean");
    expect(state.from).toBe("2015-04-13");
    expect(state.to).toBe("2015-05-31");
    expect(state.phase).toBe("Mediterranean");
  });

  test("free dates clear the preset", () => {
    const preset = applyPhase(defaultState(), "Heidenau");
    const free = withWindow(preset, "2015-03-01", "2015-03-31");
    expect(free.phase).toBeNull();
    expect(free.from).toBe("2015-03-01");
  });
});

describe("URL codec", () => {
  test("round-trips every field", () => {
    const state: ViewState = {
      from: "2015-04-13",
      to: "2015-05-31",
      phase: "Mediterranean",
      m: 3,
      view: "projection",
      node: "Angela Merkel",
      side: "category",
      mode: "conflict",
    };
    expect(decodeState(encodeState(state))).toEqual(state);
  });

  test("round-trips default state through a hash fragment", () => {
    const state = defaultState();
    expect(decodeState("#" + encodeState(state))).toEqual(state);
  });

  test("encodes the full state (shareable views)", () => {
    const encoded = encodeState({ ...defaultState(), node: "EU", m: 4 });
    const params = new URLSearchParams(encoded);
    for (const key of ["view", "from", "to", "m", "side", "mode", "node"]) {
      expect(params.has(key), key).toBe(true);
    }
  });

  test("garbage falls back to defaults", () => {
    expect(decodeState("view=banana&m=99&from=soon&side=up"))
      .toEqual({ ...defaultState(), m: 5 });
    expect(decodeState("")).toEqual(defaultState());
    expect(decodeState("m=-3").m).toBe(1);
  });

  test("unknown phase names are dropped", () => {
    expect(decodeState("phase=Atlantis").phase).toBeNull();
  });
});

describe("m slider", () => {
  test("clamps to the 1..5 range", () => {
    expect(clampM(0)).toBe(1);
    expect(clampM(2.4)).toBe(2);
    expect(clampM(17)).toBe(5);
    expect(clampM(Number.NaN)).toBe(2);
  });
});
