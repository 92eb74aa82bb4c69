/** Inline SVG line chart for a stock's price history; no chart library. */

export interface ChartOptions {
  width?: number;
  height?: number;
  stroke?: string;
}

export function priceChartSvg(historyCents: number[], opts: ChartOptions = {}): string {
  const width = opts.width ?? 560;
  const height = opts.height ?? 180;
  const stroke = opts.stroke ?? "#2563eb";
  const pad = 8;
  if (historyCents.length === 0) {
    return `<svg class="price-chart" viewBox="0 0 ${width} ${height}"></svg>`;
  }
  const max = Math.max(...historyCents, 1);
  const min = Math.min(...historyCents);
  const span = Math.max(max - min, 1);
  const step = historyCents.length > 1 ? (width - 2 * pad) / (historyCents.length - 1) : 0;
  const points = historyCents
    .map((c, i) => {
      const x = pad + i * step;
      const y = height - pad - ((c - min) / span) * (height - 2 * pad);
      return `${x.toFixed(1)},${y.toFixed(1)}`;
    })
    .join(" ");
  const last = historyCents[historyCents.length - 1];
  return [
    `<svg class="price-chart" viewBox="0 0 ${width} ${height}" role="img" aria-label="price history">`,
    `<polyline fill="none" stroke="${stroke}" stroke-width="2" points="${points}" />`,
    `<text x="${width - pad}" y="${pad + 10}" text-anchor="end" class="chart-label">$${(last / 100).toFixed(2)}</text>`,
    `</svg>`,
  ].join("");
}
