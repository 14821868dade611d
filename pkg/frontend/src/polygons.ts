/** Seed polygon editing model.
 *
 * Vertices are stored and transmitted in image pixel coordinates; the
 * canvas scale is applied only when drawing, so the server receives
 * exactly what rasterizes on the CLI path.
 */

export interface Point {
  x: number;
  y: number;
}

export class PolygonSet {
  polygons: Point[][] = [];
  current: Point[] = [];
  insideSign: number = -1;

  /** Convert a canvas/display position into image pixel coordinates. */
  static toImageCoords(displayX: number, displayY: number, scale: number): Point {
    return { x: displayX / scale, y: displayY / scale };
  }

  addVertex(p: Point): void {
    this.current.push(p);
  }

  undoVertex(): void {
    if (this.current.length > 0) {
      this.current.pop();
    } else {
      this.polygons.pop();
    }
  }

  /** Close the polygon being drawn; ignored with fewer than 3 vertices. */
  closeCurrent(): boolean {
    if (this.current.length < 3) {
      return false;
    }
    this.polygons.push(this.current);
    this.current = [];
    return true;
  }

  clear(): void {
    this.polygons = [];
    this.current = [];
  }

  toggleSign(): number {
    this.insideSign = -this.insideSign;
    return this.insideSign;
  }

  get complete(): boolean {
    return this.polygons.length > 0 && this.current.length === 0;
  }

  /** Wire form: vertex lists passed through verbatim, no client rounding. */
  toPayload(): { version: number; inside_sign: number; polygons: number[][][] } {
    return {
      version: 1,
      inside_sign: this.insideSign,
      polygons: this.polygons.map((poly) => poly.map((p) => [p.x, p.y])),
    };
  }
}
