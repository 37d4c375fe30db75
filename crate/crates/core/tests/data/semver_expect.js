// Labels [range, version] lines from stdin with npm's semver:
//   cargo run -p pacopt --features testkit --example semver_cases \
//     | node semver_expect.js /path/to/node_modules/semver > semver_cases.json
const semver = require(process.argv[2] || "semver");
const lines = require("fs").readFileSync(0, "utf8").split("\n").filter(Boolean);
const cases = lines.map((l) => {
  const [range, version] = JSON.parse(l);
  return [range, version, semver.satisfies(version, range)];
});
const version = require(require("path").join(process.argv[2] || "semver", "package.json")).version;
process.stdout.write(JSON.stringify({ reference: `semver ${version}`, cases }, null, 0) + "\n");
