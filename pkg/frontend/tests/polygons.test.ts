import { describe, expect, it } from "vitest";

import { PolygonSet } from "../src/polygons.js";

describe("PolygonSet", () => {
  it("converts display coordinates into image pixels by the scale factor", () => {
    const p = PolygonSet.toImageCoords(100, 40, 2);
    expect(p).toEqual({ x: 50, y: 20 });
  });

  it("passes vertices through to the payload without rounding", () => {
    const set = new PolygonSet();
    set.addVertex({ x: 14.25, y: 14.75 });
    set.addVertex({ x: 76.5, y: 14 });
    set.addVertex({ x: 76, y: 76.125 });
    expect(set.closeCurrent()).toBe(true);
    const payload = set.toPayload();
    expect(payload.polygons).toEqual([
      [
        [14.25, 14.75],
        [76.5, 14],
        [76, 76.125],
      ],
    ]);
    expect(payload.inside_sign).toBe(-1);
    expect(payload.version).toBe(1);
  });

  it("refuses to close a polygon with fewer than three vertices", () => {
    const set = new PolygonSet();
    set.addVertex({ x: 0, y: 0 });
    set.addVertex({ x: 5, y: 0 });
    expect(set.closeCurrent()).toBe(false);
    expect(set.polygons).toHaveLength(0);
    expect(set.complete).toBe(false);
  });

  it("undo removes the last vertex, then whole polygons", () => {
    const set = new PolygonSet();
    for (const [x, y] of [[0, 0], [4, 0], [4, 4]]) set.addVertex({ x, y });
    set.closeCurrent();
    set.addVertex({ x: 9, y: 9 });
    set.undoVertex();
    expect(set.current).toHaveLength(0);
    expect(set.polygons).toHaveLength(1);
    set.undoVertex();
    expect(set.polygons).toHaveLength(0);
  });

  it("toggles the interior sign between -1 and +1", () => {
    const set = new PolygonSet();
    expect(set.insideSign).toBe(-1);
    expect(set.toggleSign()).toBe(1);
    expect(set.toggleSign()).toBe(-1);
  });

  it("is complete only with at least one closed polygon and none pending", () => {
    const set = new PolygonSet();
    for (const [x, y] of [[0, 0], [4, 0], [4, 4]]) set.addVertex({ x, y });
    expect(set.complete).toBe(false);
    set.closeCurrent();
    expect(set.complete).toBe(true);
    set.addVertex({ x: 1, y: 1 });
    expect(set.complete).toBe(false);
  });
});
