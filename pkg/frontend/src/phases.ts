// Named debate phases shipped as canned window presets.

export interface Phase {
  name: string;
  from: string;
  to: string;
}

export const PHASES: readonly Phase[] = [
  { name: "Pegida", from: "2015-01-01", to: "2015-02-15" },
  { name: "Tröglitz", from: "2015-02-16", to: "2015-04-12" },
  { name: "Mediterranean", from: "2015-04-13", to: "2015-05-31" },
  { name: "Refugee trail", from: "2015-06-01", to: "2015-08-01" },
  { name: "Heidenau", from: "2015-08-02", to: "2015-08-30" },
  { name: "We can do it", from: "2015-08-31", to: "2015-09-27" },
  { name: "Limit immigration", from: "2015-09-28", to: "2015-11-15" },
  { name: "International solutions", from: "2015-11-16", to: "2015-12-31" },
] as const;

export function phaseByName(name: string): Phase | undefined {
  return PHASES.find((p) => p.name === name);
}
