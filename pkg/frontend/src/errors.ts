/** Raised when a CSV is missing required columns or carries no data rows. */
export class SchemaError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaError";
  }
}
