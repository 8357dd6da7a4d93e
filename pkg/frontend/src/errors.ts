/** A CSV file does not conform to its documented schema. */
export class SchemaMismatch extends Error {
  readonly column: string;
  readonly path: string;

  constructor(column: string, path: string) {
    super(`missing column "${column}" in ${path}`);
    this.name = "SchemaMismatch";
    this.column = column;
    this.path = path;
  }
}
